//! The JSON report printed for every command.

use dioph_core::Error;
use serde_json::{Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNVERIFIED: i32 = 1;
pub const EXIT_NO_SOLUTION: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub equations: Vec<bool>,
}

impl Verification {
    pub fn new(equations: Vec<bool>) -> Self {
        Verification { equations }
    }

    pub fn all(&self) -> bool {
        self.equations.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub verified: Option<Verification>,
    pub exit_code: i32,
    pub error: Option<String>,
    pub timing_ms: Option<f64>,
}

/// Exit status for a library error: malformed input is 3, everything else
/// means the method or the data admits no answer.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::DivisionByZero
        | Error::MissingParameter(_)
        | Error::MissingCoordinate(_)
        | Error::UnknownProblem(_)
        | Error::NotPrime(_)
        | Error::OutOfRange(_)
        | Error::PrimeDividesDenominator(_) => EXIT_INVALID_INPUT,
        _ => EXIT_NO_SOLUTION,
    }
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn fail(&mut self, code: i32, msg: impl Into<String>) {
        self.exit_code = code;
        self.error = Some(msg.into());
    }

    pub fn fail_with(&mut self, e: &Error) {
        self.fail(exit_code_for(e), e.to_string());
    }

    /// Record a membership check. A failed check is fatal unless an error
    /// was already recorded.
    pub fn verify(&mut self, v: Verification, code_if_false: i32, msg: &str) {
        if !v.all() && self.exit_code == EXIT_OK {
            self.fail(code_if_false, msg);
        }
        self.verified = Some(v);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("outputs".into(), Value::Object(self.outputs.clone()));
        let verified = match &self.verified {
            Some(v) => serde_json::json!({ "all": v.all(), "equations": v.equations }),
            None => Value::Null,
        };
        m.insert("verified".into(), verified);
        m.insert("exit_code".into(), self.exit_code.into());
        if let Some(e) = &self.error {
            m.insert("error".into(), Value::String(e.clone()));
        }
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), serde_json::json!(t));
        }
        Value::Object(m)
    }
}
