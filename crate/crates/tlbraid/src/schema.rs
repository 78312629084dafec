//! JSON and CSV payload schemas shared by the command-line tool and the
//! Python bindings.
//!
//! The matrix payload is `{"rows": R, "cols": C, "data": [[re, im], ...]}`
//! in row-major order; generator, braid-gate and Hamiltonian payloads wrap
//! it with their parameter records. Serialization goes through serde_json,
//! whose float formatting is shortest-round-trip, so re-ingesting a payload
//! reproduces the original values bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entanglement::NegativityReport;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tla::{GeneratorParams, TLAVerdict, TLGenerator};
use crate::yang_baxter::RMatrix;
use crate::Sign;

/// Row-major complex matrix payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        ComplexMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

/// Generator phase record: the two angles of the n = 3 construction or the
/// single q-phase of the n = 2 one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhasesJson {
    Qutrit { phi1: f64, phi2: f64 },
    EightVertex { q: f64 },
}

/// Serialized Temperley-Lieb generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub n: usize,
    pub d: f64,
    pub epsilon: i8,
    pub phases: PhasesJson,
    pub matrix: MatrixJson,
}

impl GeneratorJson {
    /// Only parameterized generators (the n = 2 and n = 3 constructors)
    /// carry the phase record this payload requires.
    pub fn from_generator(gen: &TLGenerator) -> Result<Self> {
        let (epsilon, phases) = match *gen.params() {
            GeneratorParams::EightVertex { q_phase, epsilon } => {
                (epsilon.as_i8(), PhasesJson::EightVertex { q: q_phase })
            }
            GeneratorParams::Qutrit {
                phi1,
                phi2,
                epsilon,
            } => (epsilon.as_i8(), PhasesJson::Qutrit { phi1, phi2 }),
            GeneratorParams::Generic => {
                return Err(Error::Parameter(
                    "only the parameterized n = 2 / n = 3 generators serialize to JSON".into(),
                ))
            }
        };
        Ok(Self {
            n: gen.n(),
            d: gen.loop_value(),
            epsilon,
            phases,
            matrix: gen.matrix().into(),
        })
    }

    /// Rebuild the generator, adopting the matrix payload verbatim.
    pub fn into_generator(self) -> Result<TLGenerator> {
        let epsilon = Sign::try_from(self.epsilon)?;
        let params = match self.phases {
            PhasesJson::EightVertex { q } => GeneratorParams::EightVertex {
                q_phase: q,
                epsilon,
            },
            PhasesJson::Qutrit { phi1, phi2 } => GeneratorParams::Qutrit {
                phi1,
                phi2,
                epsilon,
            },
        };
        TLGenerator::from_parts(self.n, self.d, self.matrix.to_matrix()?, params)
    }
}

/// Serialized braid gate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RMatrixJson {
    pub theta: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub epsilon: i8,
    pub n: usize,
    pub matrix: MatrixJson,
}

impl From<&RMatrix> for RMatrixJson {
    fn from(r: &RMatrix) -> Self {
        Self {
            theta: r.theta(),
            phi1: r.phi1(),
            phi2: r.phi2(),
            epsilon: r.epsilon().as_i8(),
            n: r.n(),
            matrix: r.matrix().into(),
        }
    }
}

impl RMatrixJson {
    pub fn into_r_matrix(self) -> Result<RMatrix> {
        RMatrix::from_parts(
            self.theta,
            self.phi1,
            self.phi2,
            Sign::try_from(self.epsilon)?,
            self.n,
            self.matrix.to_matrix()?,
        )
    }
}

/// Serialized relation verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub residual_idempotent: f64,
    pub residual_braid_like: f64,
    pub residual_commute: f64,
    pub tol: f64,
    pub pass: bool,
}

impl From<&TLAVerdict> for VerdictJson {
    fn from(v: &TLAVerdict) -> Self {
        Self {
            residual_idempotent: v.residual_idempotent,
            residual_braid_like: v.residual_braid_like,
            residual_commute: v.residual_commute,
            tol: v.tol,
            pass: v.pass,
        }
    }
}

/// Serialized drive Hamiltonian.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HamiltonianJson {
    pub theta: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub t: f64,
    pub hermiticity_residual: f64,
    pub matrix: MatrixJson,
}

/// Format a float with 17 significant digits: enough for an exact
/// double-precision round trip in the CSV output.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV table of a negativity sweep:
/// `theta,l,m,N_numeric,N_closed,deviation` per row.
pub fn negativity_csv(report: &NegativityReport) -> String {
    let mut out = String::from("theta,l,m,N_numeric,N_closed,deviation\n");
    for e in &report.entries {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_float(e.theta),
            e.l,
            e.m,
            csv_float(e.negativity_numeric),
            csv_float(e.negativity_closed_form),
            csv_float(e.deviation)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{negativity_sweep, SweepParams};
    use crate::tla::{tl2_eight_vertex, tl3_generator};
    use crate::yang_baxter::r_matrix;

    #[test]
    fn matrix_payload_round_trips_bit_for_bit() {
        let gen = tl3_generator(0.123456789, -2.71828, Sign::Minus);
        let json: MatrixJson = gen.matrix().into();
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let rebuilt = back.to_matrix().unwrap();
        assert_eq!(rebuilt, *gen.matrix());
    }

    #[test]
    fn generator_payload_field_names() {
        let gen = tl3_generator(0.4, 0.7, Sign::Plus);
        let json = GeneratorJson::from_generator(&gen).unwrap();
        let value: serde_json::Value = serde_json::to_value(&json).unwrap();
        assert_eq!(value["n"], 3);
        assert!((value["d"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(value["epsilon"], 1);
        assert!((value["phases"]["phi1"].as_f64().unwrap() - 0.4).abs() < 1e-15);
        assert!((value["phases"]["phi2"].as_f64().unwrap() - 0.7).abs() < 1e-15);
        assert_eq!(value["matrix"]["rows"], 9);
        assert_eq!(value["matrix"]["cols"], 9);
        assert_eq!(value["matrix"]["data"].as_array().unwrap().len(), 81);

        let gen2 = tl2_eight_vertex(1.1, Sign::Minus);
        let json2 = GeneratorJson::from_generator(&gen2).unwrap();
        let value2: serde_json::Value = serde_json::to_value(&json2).unwrap();
        assert_eq!(value2["epsilon"], -1);
        assert!((value2["phases"]["q"].as_f64().unwrap() - 1.1).abs() < 1e-15);
    }

    #[test]
    fn generator_payload_round_trips() {
        let gen = tl2_eight_vertex(0.9, Sign::Plus);
        let json = GeneratorJson::from_generator(&gen).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let back: GeneratorJson = serde_json::from_str(&text).unwrap();
        let rebuilt = back.into_generator().unwrap();
        assert_eq!(rebuilt.matrix(), gen.matrix());
        assert_eq!(rebuilt.loop_value(), gen.loop_value());
        assert_eq!(rebuilt.params(), gen.params());
    }

    #[test]
    fn r_matrix_payload_round_trips() {
        let r = r_matrix(1.0471975511965976, 0.2, -0.4, Sign::Plus, 3).unwrap();
        let json: RMatrixJson = (&r).into();
        let text = serde_json::to_string(&json).unwrap();
        let back: RMatrixJson = serde_json::from_str(&text).unwrap();
        let rebuilt = back.into_r_matrix().unwrap();
        assert_eq!(rebuilt.matrix(), r.matrix());
        assert_eq!(rebuilt.theta(), r.theta());
    }

    #[test]
    fn csv_floats_round_trip_exactly() {
        for x in [8.0 / 9.0, std::f64::consts::PI / 3.0, 1e-12, 0.0] {
            let printed = csv_float(x);
            let parsed: f64 = printed.parse().unwrap();
            assert_eq!(parsed, x, "{printed} did not round-trip");
        }
    }

    #[test]
    fn csv_table_shape() {
        let report = negativity_sweep(
            &SweepParams {
                phi1: 0.0,
                phi2: 0.0,
                epsilon: Sign::Plus,
            },
            &[0.0, std::f64::consts::FRAC_PI_2],
        )
        .unwrap();
        let csv = negativity_csv(&report);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines[0], "theta,l,m,N_numeric,N_closed,deviation");
        assert_eq!(lines.len(), 1 + 18);
        // theta = pi/2 rows read 8/9 in the closed-form column.
        let last = lines.last().unwrap();
        let fields: Vec<&str> = last.split(',').collect();
        let closed: f64 = fields[4].parse().unwrap();
        assert!((closed - 8.0 / 9.0).abs() < 1e-15);
    }
}
