//! Canonical JSON for certificates: sorted keys, no whitespace, residues as
//! decimal integers, matrices row-major.

use pgmax_core::group::Presentation;
use pgmax_core::{
    AlternatingMap, Certificate, Error, FpMatrix, LinearPowerMap, Mode, PowerMap, Prime, QuadraticMap, Result, Subspace,
    Verdict,
};
use serde_json::{json, Value};

use crate::record::{SCHEMA_VERSION, TOOL_VERSION};

pub fn certificate_json(cert: &Certificate) -> String {
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "p": cert.p.get(),
        "n": cert.n,
        "m": cert.m,
        "mode": cert.mode.as_str(),
        "seed": cert.seed,
        "attempts": cert.attempts,
        "max_attempts": cert.max_attempts,
        "alt_coeffs": cert.b.coeff().to_rows(),
        "power_coeffs": cert.f.as_ref().map(|f| f.coeff().to_rows()),
        "verdict": cert.verdict.as_str(),
        "witness": cert.witness.as_ref().map(|w| w.basis().to_rows()),
    });
    // serde_json maps are ordered by key, so this is canonical.
    v.to_string()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse { line: 1, msg: format!("missing field {key:?}") })
}

fn as_u64(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?.as_u64().ok_or_else(|| Error::Parse { line: 1, msg: format!("{key:?} is not an integer") })
}

fn as_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Parse { line: 1, msg: format!("{key:?} is not a string") })
}

fn matrix(p: Prime, cols: usize, v: &Value, key: &str) -> Result<FpMatrix> {
    let bad = || Error::Parse { line: 1, msg: format!("{key:?} is not a residue matrix") };
    let rows: Vec<Vec<u8>> = v
        .as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().filter(|&x| x < u64::from(p.get())).map(|x| x as u8).ok_or_else(bad))
                .collect()
        })
        .collect::<Result<_>>()?;
    FpMatrix::from_residue_rows(p, cols, &rows)
}

/// Inverse of [`certificate_json`].
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let schema = as_u64(&v, "schema_version")?;
    if schema != u64::from(SCHEMA_VERSION) {
        return Err(Error::Parse { line: 1, msg: format!("unsupported schema_version {schema}") });
    }
    let p = Prime::small(as_u64(&v, "p")? as u32)?;
    let n = as_u64(&v, "n")? as usize;
    let m = as_u64(&v, "m")? as usize;
    let mode: Mode = as_str(&v, "mode")?.parse()?;
    let verdict = match as_str(&v, "verdict")? {
        "certified" => Verdict::Certified,
        "exhausted" => Verdict::Exhausted,
        other => return Err(Error::Parse { line: 1, msg: format!("unknown verdict {other:?}") }),
    };
    let b = AlternatingMap::new(n, matrix(p, n * n.saturating_sub(1) / 2, field(&v, "alt_coeffs")?, "alt_coeffs")?)?;
    if b.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: b.m() });
    }
    let f = match field(&v, "power_coeffs")? {
        Value::Null => None,
        pc if p.is_two() => Some(PowerMap::Quadratic(QuadraticMap::new(n, matrix(p, n * (n + 1) / 2, pc, "power_coeffs")?)?)),
        pc => Some(PowerMap::Linear(LinearPowerMap::new(matrix(p, n, pc, "power_coeffs")?)?)),
    };
    let witness = match field(&v, "witness")? {
        Value::Null => None,
        w => Some(Subspace::from_matrix(&matrix(p, n, w, "witness")?)),
    };
    Ok(Certificate {
        p,
        n,
        m,
        mode,
        seed: as_u64(&v, "seed")?,
        attempts: as_u64(&v, "attempts")?,
        max_attempts: as_u64(&v, "max_attempts")?,
        b,
        f,
        verdict,
        witness,
    })
}

/// The group attached to a certificate. ab-max runs carry no `F`: odd `p`
/// uses `F = 0`, `p = 2` the zero-diagonal lift of `B`.
pub fn certificate_presentation(cert: &Certificate) -> Result<Presentation> {
    let f = match (&cert.f, cert.p.is_two()) {
        (Some(f), _) => Some(f.clone()),
        (None, true) => Some(PowerMap::Quadratic(QuadraticMap::lift_of(&cert.b)?)),
        (None, false) => None,
    };
    Ok(Presentation::from_maps(&cert.b, f.as_ref())?
        .with_provenance(format!("certificate mode={} p={} n={} seed={}", cert.mode, cert.p.get(), cert.n, cert.seed)))
}
