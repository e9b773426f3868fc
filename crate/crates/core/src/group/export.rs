//! Plain-text and GAP-style serializations of a [`Presentation`].
//!
//! Text format, one relation per line, generator indices 1-based:
//!
//! ```text
//! pgroup p=3 n=2 m=1
//! comm 1 2 : 1
//! pow 1 : 0
//! pow 2 : 0
//! central 1 1
//! central 2 1
//! exp y 1
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::{Presentation, Relation};
use crate::field::Prime;
use crate::{Error, Result};

fn exps_suffix(exps: &[u8]) -> String {
    let mut s = String::from(":");
    for e in exps {
        let _ = write!(s, " {e}");
    }
    s
}

pub fn export_text(pres: &Presentation) -> String {
    let mut out = format!("pgroup p={} n={} m={}\n", pres.p.get(), pres.n, pres.m);
    for rel in pres.relations() {
        let _ = match rel {
            Relation::Comm { i, j, exps } => writeln!(out, "comm {} {} {}", i + 1, j + 1, exps_suffix(&exps)),
            Relation::Pow { i, exps } => writeln!(out, "pow {} {}", i + 1, exps_suffix(&exps)),
            Relation::Central { i, j } => writeln!(out, "central {} {}", i + 1, j + 1),
            Relation::Exp { k } => writeln!(out, "exp y {}", k + 1),
        };
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header(line: usize, s: &str) -> Result<(Prime, usize, usize)> {
    let mut it = s.split_whitespace();
    if it.next() != Some("pgroup") {
        return Err(perr(line, "expected `pgroup` header"));
    }
    let mut field = |key: &str| -> Result<u32> {
        let tok = it.next().ok_or_else(|| perr(line, format!("missing {key}=")))?;
        tok.strip_prefix(key)
            .and_then(|t| t.strip_prefix('='))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(line, format!("bad {key}= field: {tok:?}")))
    };
    let p = Prime::small(field("p")?).map_err(|e| perr(line, e.to_string()))?;
    let n = field("n")? as usize;
    let m = field("m")? as usize;
    if it.next().is_some() {
        return Err(perr(line, "trailing tokens in header"));
    }
    Ok((p, n, m))
}

fn index(line: usize, tok: Option<&str>, bound: usize) -> Result<usize> {
    let v: usize = tok.and_then(|t| t.parse().ok()).ok_or_else(|| perr(line, "expected an index"))?;
    if v == 0 || v > bound {
        return Err(perr(line, format!("index {v} outside 1..={bound}")));
    }
    Ok(v - 1)
}

fn exponents(line: usize, rest: &[&str], p: Prime, m: usize) -> Result<Vec<u8>> {
    if rest.first() != Some(&":") {
        return Err(perr(line, "expected `:`"));
    }
    let exps = rest[1..]
        .iter()
        .map(|t| t.parse::<u32>().ok().filter(|&e| e < p.get()).map(|e| e as u8))
        .collect::<Option<Vec<u8>>>()
        .ok_or_else(|| perr(line, "exponent is not a residue"))?;
    if exps.len() != m {
        return Err(perr(line, format!("expected {m} exponents, found {}", exps.len())));
    }
    Ok(exps)
}

/// Inverse of [`export_text`]. Lines must appear in canonical order.
pub fn parse_text(text: &str) -> Result<Presentation> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let (p, n, m) = parse_header(hl, header)?;
    let mut comm = Vec::new();
    let mut pow = Vec::new();
    let skeleton = Presentation {
        p,
        n,
        m,
        comm: alloc::vec![alloc::vec![0; m]; n * n.saturating_sub(1) / 2],
        pow: alloc::vec![alloc::vec![0; m]; n],
        provenance: None,
    };
    for expected in skeleton.relations() {
        let (ln, l) = lines.next().ok_or_else(|| perr(0, "unexpected end of input"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let mut it = toks.iter().copied();
        let kind = it.next().unwrap_or("");
        match expected {
            Relation::Comm { i, j, .. } => {
                if kind != "comm" || index(ln, it.next(), n)? != i || index(ln, it.next(), n)? != j {
                    return Err(perr(ln, format!("expected `comm {} {}`", i + 1, j + 1)));
                }
                comm.push(exponents(ln, &toks[3..], p, m)?);
            }
            Relation::Pow { i, .. } => {
                if kind != "pow" || index(ln, it.next(), n)? != i {
                    return Err(perr(ln, format!("expected `pow {}`", i + 1)));
                }
                pow.push(exponents(ln, &toks[2..], p, m)?);
            }
            Relation::Central { i, j } => {
                if kind != "central" || index(ln, it.next(), n)? != i || index(ln, it.next(), m)? != j || toks.len() != 3 {
                    return Err(perr(ln, format!("expected `central {} {}`", i + 1, j + 1)));
                }
            }
            Relation::Exp { k } => {
                if kind != "exp" || it.next() != Some("y") || index(ln, it.next(), m)? != k || toks.len() != 3 {
                    return Err(perr(ln, format!("expected `exp y {}`", k + 1)));
                }
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing relation"));
    }
    Presentation::from_parts(p, n, m, comm, pow)
}

fn word(head: String, exps: &[u8], names: &[String], n: usize) -> String {
    let mut out = head;
    for (k, &e) in exps.iter().enumerate() {
        if e != 0 {
            let _ = write!(out, "*{}^-{}", names[n + k], e);
        }
    }
    out
}

/// Finitely presented group script for GAP: free group on `n + m`
/// generators and the relators in canonical order. The first comment line
/// carries the parameters so that [`parse_cas`] can invert it.
pub fn export_cas(pres: &Presentation) -> String {
    let names = pres.generator_names();
    let p = pres.p.get();
    let mut out = format!("# pgroup p={} n={} m={}\n", p, pres.n, pres.m);
    if let Some(src) = &pres.provenance {
        let _ = writeln!(out, "# source {}", src.replace('\n', " "));
    }
    let quoted: Vec<String> = names.iter().map(|s| format!("\"{s}\"")).collect();
    let _ = writeln!(out, "F := FreeGroup({});;", quoted.join(", "));
    for (k, name) in names.iter().enumerate() {
        let _ = writeln!(out, "{name} := F.{};;", k + 1);
    }
    let relators: Vec<String> = pres
        .relations()
        .into_iter()
        .map(|rel| match rel {
            Relation::Comm { i, j, exps } => word(format!("Comm({}, {})", names[i], names[j]), &exps, &names, pres.n),
            Relation::Pow { i, exps } => word(format!("{}^{}", names[i], p), &exps, &names, pres.n),
            Relation::Central { i, j } => format!("Comm({}, {})", names[i], names[pres.n + j]),
            Relation::Exp { k } => format!("{}^{}", names[pres.n + k], p),
        })
        .collect();
    out.push_str("rels := [\n");
    for (k, r) in relators.iter().enumerate() {
        let sep = if k + 1 == relators.len() { "" } else { "," };
        let _ = writeln!(out, "  {r}{sep}");
    }
    out.push_str("];;\nG := F / rels;;\n");
    out
}

/// Parses a `y_k^-e` tail of a relator into an exponent row.
fn cas_tail(line: usize, parts: &[&str], p: Prime, n: usize, m: usize) -> Result<Vec<u8>> {
    let mut exps = alloc::vec![0u8; m];
    let mut last: Option<usize> = None;
    for part in parts {
        let (name, e) = part.split_once("^-").ok_or_else(|| perr(line, format!("bad factor {part:?}")))?;
        let k = name
            .strip_prefix('y')
            .and_then(|t| t.parse::<usize>().ok())
            .filter(|&k| k >= 1 && k <= m)
            .ok_or_else(|| perr(line, format!("bad generator {name:?}")))?
            - 1;
        let e: u32 = e.parse().ok().filter(|&e| e > 0 && e < p.get()).ok_or_else(|| perr(line, "bad exponent"))?;
        if last.is_some_and(|l| l >= k) {
            return Err(perr(line, "factors out of order"));
        }
        last = Some(k);
        exps[k] = e as u8;
    }
    let _ = n;
    Ok(exps)
}

/// Inverse of [`export_cas`].
pub fn parse_cas(text: &str) -> Result<Presentation> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();
    let (hl, header) = lines.first().copied().ok_or_else(|| perr(1, "empty input"))?;
    let header = header.strip_prefix('#').ok_or_else(|| perr(hl, "expected `# pgroup` comment"))?;
    let (p, n, m) = parse_header(hl, header.trim())?;
    let provenance = lines
        .iter()
        .find_map(|(_, l)| l.strip_prefix("# source ").map(ToString::to_string));
    let start = lines
        .iter()
        .position(|(_, l)| *l == "rels := [")
        .ok_or_else(|| perr(0, "missing `rels := [`"))?;
    let skeleton = Presentation {
        p,
        n,
        m,
        comm: alloc::vec![alloc::vec![0; m]; n * n.saturating_sub(1) / 2],
        pow: alloc::vec![alloc::vec![0; m]; n],
        provenance: None,
    };
    let names = skeleton.generator_names();
    let expected = skeleton.relations();
    let body = &lines[start + 1..];
    if body.len() < expected.len() + 1 || body[expected.len()].1 != "];;" {
        return Err(perr(start + 1, format!("expected {} relators", expected.len())));
    }
    let mut comm = Vec::new();
    let mut pow = Vec::new();
    for ((ln, raw), rel) in body.iter().zip(expected) {
        let r = raw.strip_suffix(',').unwrap_or(raw);
        let parts: Vec<&str> = r.split('*').collect();
        let head = parts[0];
        let tail = &parts[1..];
        match rel {
            Relation::Comm { i, j, .. } => {
                if head != format!("Comm({}, {})", names[i], names[j]) {
                    return Err(perr(*ln, format!("expected commutator of {} and {}", names[i], names[j])));
                }
                comm.push(cas_tail(*ln, tail, p, n, m)?);
            }
            Relation::Pow { i, .. } => {
                if head != format!("{}^{}", names[i], p.get()) {
                    return Err(perr(*ln, format!("expected power of {}", names[i])));
                }
                pow.push(cas_tail(*ln, tail, p, n, m)?);
            }
            Relation::Central { i, j } => {
                if r != format!("Comm({}, {})", names[i], names[n + j]) {
                    return Err(perr(*ln, "expected centrality relator"));
                }
            }
            Relation::Exp { k } => {
                if r != format!("{}^{}", names[n + k], p.get()) {
                    return Err(perr(*ln, "expected exponent relator"));
                }
            }
        }
    }
    let mut pres = Presentation::from_parts(p, n, m, comm, pow)?;
    pres.provenance = provenance;
    Ok(pres)
}
