//! Verification records and the append-only JSON Lines cache.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use periodpoly::{CaseTag, Factorization};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Brute,
    Lift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    Skipped,
}

/// Builds a record as a JSON object; `digest` covers every field except
/// `digest` and `timestamp`.
pub fn record(p: u64, s: u32, m: u32, case: &CaseTag, oracle: Option<Oracle>, status: Status, fac: &Factorization) -> Value {
    let mut v = json!({
        "p": p,
        "s": s,
        "m": m,
        "case": case,
        "oracle": oracle,
        "status": status,
        "factorization": fac,
    });
    let digest = digest(&v);
    let obj = v.as_object_mut().unwrap();
    obj.insert("digest".into(), Value::String(digest));
    obj.insert("timestamp".into(), json!(now()));
    v
}

pub fn digest(v: &Value) -> String {
    let mut body = v.clone();
    if let Some(obj) = body.as_object_mut() {
        obj.remove("digest");
        obj.remove("timestamp");
    }
    // serde_json maps are ordered by key, so the encoding is canonical
    hex::encode(Sha256::digest(body.to_string().as_bytes()))
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// The most recent verified record for the instance, if any.
pub fn lookup(path: &Path, p: u64, s: u32, m: u32, oracle: Oracle) -> CliResult<Option<Value>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut hit = None;
    for line in BufReader::new(file).lines() {
        let Ok(v) = serde_json::from_str::<Value>(&line?) else { continue };
        if v["p"] == json!(p)
            && v["s"] == json!(s)
            && v["m"] == json!(m)
            && v["oracle"] == json!(oracle)
            && v["status"] == json!(Status::Verified)
            && v["digest"].as_str() == Some(digest(&v).as_str())
        {
            hit = Some(v);
        }
    }
    Ok(hit)
}

/// A copy of a cached record with a fresh timestamp.
pub fn restamp(mut v: Value) -> Value {
    v["timestamp"] = json!(now());
    v
}

pub fn append(path: &Path, v: &Value) -> CliResult<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{v}")?;
    Ok(())
}
