//! JSON scenario and result files.
//!
//! Scenario:
//!
//! ```json
//! {
//!   "positions": [0.0, 0.3, 0.9],
//!   "gains": [1.12, 1.1, 1.0],
//!   "theta0_deg": -30.0,
//!   "thetaC_deg": 52.0,
//!   "rhoC_db": -30.0,
//!   "psiC_rad": 1.25
//! }
//! ```
//!
//! `gains` may be replaced by `"weights": [[re, im], ...]`; exactly one of
//! the two must be present. `rhoC_db` is the string `"null"` for an exact
//! null and `psiC_rad` is optional. A result file holds the scenario under
//! `"scenario"` plus the adjusted weights and diagnostics.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use polyphase::{
    build_preassigned_weight, Angle, ArrayGeometry, AdjustmentSpec, PowerLevel, WeightVector,
};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

const NULL_DB: &str = "null";

/// The pre-assigned excitation: explicit weights or a taper steered to θ0.
#[derive(Debug, Clone, PartialEq)]
pub enum Excitation {
    Gains(Vec<f64>),
    Weights(Vec<Complex<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub positions: Vec<f64>,
    pub excitation: Excitation,
    pub theta0_deg: f64,
    pub theta_c_deg: f64,
    /// `None` requests an exact null.
    pub rho_c_db: Option<f64>,
    pub psi_c_rad: Option<f64>,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn number(map: &Map<String, Value>, key: &str) -> Result<f64> {
    match map.get(key) {
        None => Err(input(format!("missing field `{key}`"))),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| input(format!("field `{key}`: expected a number, got {v}"))),
    }
}

fn numbers(value: &Value, key: &str) -> Result<Vec<f64>> {
    let arr = value
        .as_array()
        .ok_or_else(|| input(format!("field `{key}`: expected an array of numbers")))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .ok_or_else(|| input(format!("field `{key}`[{i}]: expected a number, got {v}")))
        })
        .collect()
}

fn complex_list(value: &Value, key: &str) -> Result<Vec<Complex<f64>>> {
    let arr = value
        .as_array()
        .ok_or_else(|| input(format!("field `{key}`: expected an array of [re, im] pairs")))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            let pair = numbers(v, &format!("{key}[{i}]"))?;
            match pair[..] {
                [re, im] => Ok(Complex::new(re, im)),
                _ => Err(input(format!("field `{key}`[{i}]: expected [re, im]"))),
            }
        })
        .collect()
}

fn complex_json(w: &[Complex<f64>]) -> Value {
    Value::Array(w.iter().map(|c| json!([c.re, c.im])).collect())
}

fn db_json(db: Option<f64>) -> Value {
    db.map_or_else(|| json!(NULL_DB), |v| json!(v))
}

fn db_from(map: &Map<String, Value>, key: &str) -> Result<Option<f64>> {
    match map.get(key) {
        None => Err(input(format!("missing field `{key}`"))),
        Some(Value::String(s)) if s == NULL_DB => Ok(None),
        Some(v) => match v.as_f64() {
            Some(x) if x.is_finite() => Ok(Some(x)),
            _ => Err(input(format!(
                "field `{key}`: expected a number of dB or \"{NULL_DB}\", got {v}"
            ))),
        },
    }
}

fn object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| input(format!("{what}: expected a JSON object")))
}

impl ScenarioFile {
    pub fn from_json(value: &Value) -> Result<Self> {
        let map = object(value, "scenario")?;
        let positions = numbers(
            map.get("positions").ok_or_else(|| input("missing field `positions`"))?,
            "positions",
        )?;
        let excitation = match (map.get("gains"), map.get("weights")) {
            (Some(g), None) => Excitation::Gains(numbers(g, "gains")?),
            (None, Some(w)) => Excitation::Weights(complex_list(w, "weights")?),
            (Some(_), Some(_)) => {
                return Err(input("fields `gains` and `weights` are mutually exclusive"))
            }
            (None, None) => return Err(input("one of the fields `gains` or `weights` is required")),
        };
        let psi_c_rad = match map.get("psiC_rad") {
            None | Some(Value::Null) => None,
            Some(_) => Some(number(map, "psiC_rad")?),
        };
        Ok(Self {
            positions,
            excitation,
            theta0_deg: number(map, "theta0_deg")?,
            theta_c_deg: number(map, "thetaC_deg")?,
            rho_c_db: db_from(map, "rhoC_db")?,
            psi_c_rad,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("positions".into(), json!(self.positions));
        match &self.excitation {
            Excitation::Gains(g) => map.insert("gains".into(), json!(g)),
            Excitation::Weights(w) => map.insert("weights".into(), complex_json(w)),
        };
        map.insert("theta0_deg".into(), json!(self.theta0_deg));
        map.insert("thetaC_deg".into(), json!(self.theta_c_deg));
        map.insert("rhoC_db".into(), db_json(self.rho_c_db));
        if let Some(psi) = self.psi_c_rad {
            map.insert("psiC_rad".into(), json!(psi));
        }
        Value::Object(map)
    }

    pub fn geometry(&self) -> Result<ArrayGeometry<f64>> {
        ArrayGeometry::new(self.positions.clone())
            .map_err(|e| input(format!("field `positions`: {e}")))
    }

    pub fn theta0(&self) -> Result<Angle<f64>> {
        Angle::steering_degrees(self.theta0_deg)
            .map_err(|e| input(format!("field `theta0_deg`: {e}")))
    }

    pub fn w_pre(&self) -> Result<WeightVector<f64>> {
        let geom = self.geometry()?;
        match &self.excitation {
            Excitation::Gains(g) => build_preassigned_weight(&geom, g, self.theta0()?)
                .map_err(|e| input(format!("field `gains`: {e}"))),
            Excitation::Weights(w) => {
                if w.len() != geom.len() {
                    return Err(input(format!(
                        "field `weights`: {} entries for {} elements",
                        w.len(),
                        geom.len()
                    )));
                }
                WeightVector::new(w.clone()).map_err(|e| input(format!("field `weights`: {e}")))
            }
        }
    }

    pub fn spec(&self) -> Result<AdjustmentSpec<f64>> {
        let theta_c = Angle::steering_degrees(self.theta_c_deg)
            .map_err(|e| input(format!("field `thetaC_deg`: {e}")))?;
        let rho = match self.rho_c_db {
            None => PowerLevel::null(),
            Some(db) => {
                PowerLevel::from_db(db).map_err(|e| input(format!("field `rhoC_db`: {e}")))?
            }
        };
        AdjustmentSpec::new(self.theta0()?, theta_c, rho, self.psi_c_rad)
            .map_err(|e| input(format!("scenario: {e}")))
    }
}

/// Adjusted weights plus diagnostics, alongside the scenario they answer.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultFile {
    pub scenario: ScenarioFile,
    pub w_new: Vec<Complex<f64>>,
    pub psi_used: f64,
    pub residual: f64,
    /// `None` for an exact (zero) response.
    pub achieved_level_db: Option<f64>,
    pub distortion_db: f64,
}

impl ResultFile {
    pub fn from_json(value: &Value) -> Result<Self> {
        let map = object(value, "result")?;
        let scenario = ScenarioFile::from_json(
            map.get("scenario").ok_or_else(|| input("missing field `scenario`"))?,
        )?;
        Ok(Self {
            scenario,
            w_new: complex_list(
                map.get("w_new").ok_or_else(|| input("missing field `w_new`"))?,
                "w_new",
            )?,
            psi_used: number(map, "psi_used")?,
            residual: number(map, "residual")?,
            achieved_level_db: db_from(map, "achieved_level_db")?,
            distortion_db: number(map, "distortion_db")?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scenario": self.scenario.to_json(),
            "w_new": complex_json(&self.w_new),
            "psi_used": self.psi_used,
            "residual": self.residual,
            "achieved_level_db": db_json(self.achieved_level_db),
            "distortion_db": self.distortion_db,
        })
    }

    pub fn weights(&self) -> Result<WeightVector<f64>> {
        WeightVector::new(self.w_new.clone()).map_err(|e| input(format!("field `w_new`: {e}")))
    }
}

/// Either kind of input file.
#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    Scenario(ScenarioFile),
    Result(ResultFile),
}

impl InputFile {
    pub fn from_json(value: &Value) -> Result<Self> {
        if object(value, "input")?.contains_key("w_new") {
            ResultFile::from_json(value).map(InputFile::Result)
        } else {
            ScenarioFile::from_json(value).map(InputFile::Scenario)
        }
    }

    pub fn scenario(&self) -> &ScenarioFile {
        match self {
            InputFile::Scenario(s) => s,
            InputFile::Result(r) => &r.scenario,
        }
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: invalid JSON: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Value {
        json!({
            "positions": [0.0, 0.5, 1.0],
            "gains": [1.0, 1.0, 1.0],
            "theta0_deg": 0.0,
            "thetaC_deg": 30.0,
            "rhoC_db": -20.0
        })
    }

    #[test]
    fn parses_and_reserializes() {
        let s = ScenarioFile::from_json(&sample()).unwrap();
        assert_eq!(s.rho_c_db, Some(-20.0));
        assert_eq!(s.psi_c_rad, None);
        assert_eq!(s.to_json(), sample());
    }

    #[test]
    fn null_level() {
        let mut v = sample();
        v["rhoC_db"] = json!("null");
        let s = ScenarioFile::from_json(&v).unwrap();
        assert_eq!(s.rho_c_db, None);
        assert!(s.spec().unwrap().rho_c.is_null());
    }

    #[test]
    fn errors_name_the_field() {
        let mut v = sample();
        v["rhoC_db"] = json!("loud");
        let err = ScenarioFile::from_json(&v).unwrap_err().to_string();
        assert!(err.contains("rhoC_db"), "{err}");

        let mut v = sample();
        v.as_object_mut().unwrap().remove("thetaC_deg");
        assert!(ScenarioFile::from_json(&v).unwrap_err().to_string().contains("thetaC_deg"));

        let mut v = sample();
        v["weights"] = json!([[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]);
        assert!(ScenarioFile::from_json(&v).unwrap_err().to_string().contains("weights"));

        let mut v = sample();
        v["gains"] = json!([1.0, "x", 1.0]);
        assert!(ScenarioFile::from_json(&v).unwrap_err().to_string().contains("gains`[1]"));

        let mut v = sample();
        v["thetaC_deg"] = json!(120.0);
        let s = ScenarioFile::from_json(&v).unwrap();
        assert!(s.spec().unwrap_err().to_string().contains("thetaC_deg"));
    }

    #[test]
    fn detects_result_files() {
        let r = ResultFile {
            scenario: ScenarioFile::from_json(&sample()).unwrap(),
            w_new: vec![Complex::new(1.0, 0.0); 3],
            psi_used: 0.5,
            residual: 1e-16,
            achieved_level_db: Some(-20.0),
            distortion_db: 0.1,
        };
        let back = InputFile::from_json(&r.to_json()).unwrap();
        assert_eq!(back, InputFile::Result(r));
        assert!(matches!(
            InputFile::from_json(&sample()).unwrap(),
            InputFile::Scenario(_)
        ));
    }
}
