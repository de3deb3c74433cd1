//! Text format for regions and tables.
//!
//! ```text
//! # comment
//! domain re>3/2
//! region X1 open
//! disk center=0 radius=1
//! end
//! region X2 open
//! exterior center=0 radius=1
//! halfplane re>1
//! hermitian a=0 b=-1/2 c=1
//! end
//! ```
//!
//! Half-plane operators are `re>`, `re<`, `im>`, `im<`, written with `=`
//! (`re>=`) in closed regions. Serialization picks the named primitive
//! whenever it reproduces the coefficients exactly, so parse and serialize
//! are mutually inverse on coefficients.

use std::fmt::Write as _;

use pingpong_core::arith::{GaussianRational, Rational};
use pingpong_core::moebius::{GenDisk, Openness, Region, SignPolicy};
use pingpong_core::pingpong::{ParamDomain, PingPongTable};

use crate::CliError;

fn err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("line {line}: {msg}"))
}

fn key_values<'a>(line: usize, toks: &[&'a str], keys: &[&str]) -> Result<Vec<&'a str>, CliError> {
    keys.iter()
        .map(|k| {
            toks.iter()
                .find_map(|t| t.strip_prefix(k).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| err(line, format!("missing `{k}=`")))
        })
        .collect()
}

fn parse_member(line: usize, text: &str, openness: Openness) -> Result<GenDisk, CliError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let lit = |e: pingpong_core::Error| err(line, e);
    match toks[0] {
        "disk" | "exterior" => {
            let v = key_values(line, &toks[1..], &["center", "radius"])?;
            let c: GaussianRational = v[0].parse().map_err(lit)?;
            let r: Rational = v[1].parse().map_err(lit)?;
            let d = if toks[0] == "disk" { GenDisk::disk(&c, &r, openness) } else { GenDisk::exterior(&c, &r, openness) };
            d.map_err(lit)
        }
        "halfplane" => {
            let bound = toks.get(1).ok_or_else(|| err(line, "missing half-plane bound"))?;
            let (axis, rest) = bound.split_at(2.min(bound.len()));
            let (op, rest) = rest.split_at(1.min(rest.len()));
            let (closed, value) = match rest.strip_prefix('=') {
                Some(v) => (true, v),
                None => (false, rest),
            };
            if closed != (openness == Openness::Closed) {
                return Err(err(line, "half-plane operator does not match region openness"));
            }
            let t: Rational = value.parse().map_err(lit)?;
            match (axis, op) {
                ("re", ">") => Ok(GenDisk::re_greater(&t, openness)),
                ("re", "<") => Ok(GenDisk::re_less(&t, openness)),
                ("im", ">") => Ok(GenDisk::im_greater(&t, openness)),
                ("im", "<") => Ok(GenDisk::im_less(&t, openness)),
                _ => Err(err(line, format!("bad half-plane `{bound}`"))),
            }
        }
        "hermitian" => {
            let v = key_values(line, &toks[1..], &["a", "b", "c"])?;
            GenDisk::from_hermitian(v[0].parse().map_err(lit)?, v[1].parse().map_err(lit)?, v[2].parse().map_err(lit)?, openness)
                .map_err(lit)
        }
        other => Err(err(line, format!("unknown member kind `{other}`"))),
    }
}

fn half(n: i64) -> Rational {
    Rational::new(n, 2).expect("nonzero")
}

/// One member line, without trailing newline.
pub fn member_line(d: &GenDisk) -> String {
    let (a, b, c) = (d.a(), d.b(), d.c());
    let closed = d.is_closed();
    let eq = if closed { "=" } else { "" };
    if a.is_zero() {
        let zero = Rational::zero();
        let kinds = [
            (GaussianRational::new(half(-1), zero.clone()), "re>", c.clone()),
            (GaussianRational::new(half(1), zero.clone()), "re<", -c),
            (GaussianRational::new(zero.clone(), half(-1)), "im>", c.clone()),
            (GaussianRational::new(zero, half(1)), "im<", -c),
        ];
        for (bb, op, t) in kinds {
            if *b == bb {
                let (axis, rel) = op.split_at(2);
                return format!("halfplane {axis}{rel}{eq}{t}");
            }
        }
    } else if *a == Rational::one() || *a == -Rational::one() {
        let exterior = a.is_negative();
        let center = if exterior { b.clone() } else { -b };
        let r2 = if exterior { c + &b.norm_sqr() } else { &b.norm_sqr() - c };
        if let Some(r) = r2.sqrt_exact().filter(Rational::is_positive) {
            let kind = if exterior { "exterior" } else { "disk" };
            return format!("{kind} center={center} radius={r}");
        }
    }
    format!("hermitian a={a} b={b} c={c}")
}

pub fn serialize_region(u: &Region) -> String {
    let open = if u.openness() == Openness::Open { "open" } else { "closed" };
    let mut s = format!("region {} {open}\n", u.label());
    for m in u.members() {
        s.push_str(&member_line(m));
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

/// Parses every `region ... end` block and the optional `domain` line.
pub fn parse_regions(text: &str) -> Result<(Vec<Region>, Option<ParamDomain>), CliError> {
    let mut regions = Vec::new();
    let mut domain = None;
    let mut open_block: Option<(usize, String, Openness, Vec<GenDisk>)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        match (toks[0], open_block.as_mut()) {
            ("region", None) => {
                let [_, label, o] = toks[..] else {
                    return Err(err(line, "expected `region <label> open|closed`"));
                };
                let openness = match o {
                    "open" => Openness::Open,
                    "closed" => Openness::Closed,
                    _ => return Err(err(line, format!("bad openness `{o}`"))),
                };
                open_block = Some((line, label.to_string(), openness, Vec::new()));
            }
            ("end", Some(_)) => {
                let (start, label, _, members) = open_block.take().expect("block open");
                regions.push(Region::new(label, members).map_err(|e| err(start, e))?);
            }
            ("domain", None) => {
                let bound = toks.get(1).ok_or_else(|| err(line, "missing domain"))?;
                let d = if let Some(v) = bound.strip_prefix("re>=") {
                    ParamDomain::re_at_least(v.parse().map_err(|e| err(line, e))?)
                } else if let Some(v) = bound.strip_prefix("re>") {
                    ParamDomain::re_greater(v.parse().map_err(|e| err(line, e))?)
                } else {
                    return Err(err(line, format!("bad domain `{bound}`")));
                };
                domain = Some(d);
            }
            (_, Some((_, _, openness, members))) => members.push(parse_member(line, t, *openness)?),
            (other, None) => return Err(err(line, format!("unexpected `{other}` outside a region block"))),
        }
    }
    if let Some((start, ..)) = open_block {
        return Err(err(start, "region block is not closed with `end`"));
    }
    Ok((regions, domain))
}

pub fn serialize_table(t: &PingPongTable) -> String {
    let rel = if t.domain.inclusive { ">=" } else { ">" };
    let mut s = String::new();
    writeln!(s, "domain re{rel}{}", t.domain.re_bound).expect("string write");
    for r in t.regions() {
        s.push_str(&serialize_region(r));
    }
    s
}

/// Builds a custom table from blocks labelled X1, X2, K1, K2; the domain
/// defaults to `Re lambda > 3/2`.
pub fn parse_table(text: &str, policy: SignPolicy) -> Result<PingPongTable, CliError> {
    let (regions, domain) = parse_regions(text)?;
    let find = |label: &str| {
        regions
            .iter()
            .find(|r| r.label() == label)
            .cloned()
            .ok_or_else(|| CliError::Config(format!("table needs a region labelled {label}")))
    };
    let domain = domain.unwrap_or_else(|| ParamDomain::re_greater(half(3)));
    Ok(PingPongTable::custom(find("X1")?, find("X2")?, find("K1")?, find("K2")?, domain, policy)?)
}
