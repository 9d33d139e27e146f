//! Line-oriented instance files.
//!
//! ```text
//! lll-instance 1
//! family firm
//! meta jobs 100
//! space product 2*200
//! dependency-bound 31
//! event job0 patterns 3 17 40 : 0,0,0 1,1,1 measure 1/4
//! gate firm pass
//! gate-comparison 30 < 2^5 and 1/128 <= 1/(4*32)
//! gate-input d 32/1
//! assignment 0 1 1 0 ...
//! ```
//!
//! `space permutation <n>` declares a permutation space. Event kinds are
//! `mono <vars>`, `missing <vars>`, `clause <var>=<value>...`,
//! `patterns <vars> : <pattern>...` (comma-joined values, `-` for the empty
//! pattern) and `table <vars> : <bits>`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::event::{BadEvent, EventKind, Literal};
use crate::instance::{Instance, InstanceGate};
use crate::rational::{self, to_exact};
use crate::space::{Assignment, PermutationSpace, Space, VariableSpace};

pub const HEADER: &str = "lll-instance 1";

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Run-length domain list: `2*200 3`.
fn domains_text(domains: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < domains.len() {
        let j = (i..domains.len()).find(|&j| domains[j] != domains[i]).unwrap_or(domains.len());
        parts.push(if j - i == 1 { domains[i].to_string() } else { format!("{}*{}", domains[i], j - i) });
        i = j;
    }
    parts.join(" ")
}

pub fn assignment_line(a: &Assignment) -> String {
    format!("assignment {}", join(&a.values, " "))
}

pub fn to_text(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "family {}", instance.family);
    for (k, v) in &instance.meta {
        let _ = writeln!(out, "meta {k} {v}");
    }
    match instance.space() {
        Space::Product(s) => {
            let _ = writeln!(out, "{}", format!("space product {}", domains_text(s.domains())).trim_end());
        }
        Space::Permutation(p) => {
            let _ = writeln!(out, "space permutation {}", p.n());
        }
    }
    if let Some(d) = instance.dependency_bound {
        let _ = writeln!(out, "dependency-bound {d}");
    }
    if instance.certificate_only {
        let _ = writeln!(out, "certificate-only");
    }
    for e in instance.events() {
        let _ = write!(out, "event {} {}", e.id(), e.kind().name());
        match e.kind() {
            EventKind::Monochromatic | EventKind::MissingColor => {
                let _ = write!(out, " {}", join(e.support(), " "));
            }
            EventKind::Clause(lits) => {
                for l in lits {
                    let _ = write!(out, " {}={}", l.var, l.value);
                }
            }
            EventKind::ForbiddenPatterns(ps) => {
                let _ = write!(out, " {} :", join(e.support(), " "));
                for p in ps {
                    let _ = write!(out, " {}", if p.is_empty() { "-".to_string() } else { join(p, ",") });
                }
            }
            EventKind::TruthTable(bits) => {
                let bits: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                let _ = write!(out, " {} : {bits}", join(e.support(), " "));
            }
        }
        if let Some(m) = e.analytic_measure() {
            let _ = write!(out, " measure {}", to_exact(m));
        }
        out.push('\n');
    }
    if let Some(g) = &instance.gate {
        let _ = writeln!(out, "gate {} {}", g.family, if g.passed { "pass" } else { "fail" });
        let _ = writeln!(out, "gate-comparison {}", g.comparison);
        for (k, v) in &g.inputs {
            let _ = writeln!(out, "gate-input {k} {v}");
        }
    }
    if let Some(a) = &instance.assignment {
        let _ = writeln!(out, "{}", assignment_line(a));
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| perr(line, format!("`{token}` is not a valid {what}")))
}

fn parse_domains(line: usize, tokens: &[&str]) -> Result<Vec<u32>> {
    let mut domains = Vec::new();
    for t in tokens {
        match t.split_once('*') {
            Some((d, count)) => {
                let d: u32 = num(line, d, "domain size")?;
                let count: usize = num(line, count, "repeat count")?;
                if count > 1 << 28 {
                    return Err(perr(line, "too many variables"));
                }
                domains.extend(std::iter::repeat_n(d, count));
            }
            None => domains.push(num(line, t, "domain size")?),
        }
    }
    Ok(domains)
}

fn parse_event(line: usize, tokens: &[&str], space: &Space) -> Result<BadEvent> {
    let [id, kind, rest @ ..] = tokens else {
        return Err(perr(line, "event needs an id and a kind"));
    };
    let (body, measure) = match rest.iter().position(|&t| t == "measure") {
        Some(p) => {
            let m = rest.get(p + 1).ok_or_else(|| perr(line, "measure needs a value"))?;
            if rest.len() != p + 2 {
                return Err(perr(line, "unexpected tokens after measure"));
            }
            let m = rational::parse(m).ok_or_else(|| perr(line, format!("`{m}` is not a fraction")))?;
            (&rest[..p], Some(m))
        }
        None => (rest, None),
    };
    let vars = |ts: &[&str]| ts.iter().map(|t| num::<usize>(line, t, "variable index")).collect::<Result<Vec<_>>>();
    let split = |ts: &'_ [&'_ str]| -> Result<(Vec<usize>, Vec<String>)> {
        let colon = ts.iter().position(|&t| t == ":").ok_or_else(|| perr(line, "missing `:`"))?;
        Ok((vars(&ts[..colon])?, ts[colon + 1..].iter().map(|s| s.to_string()).collect()))
    };
    let wrap = |e: Error| match e {
        Error::Parse { .. } => e,
        other => perr(line, other.to_string()),
    };
    let event = match *kind {
        "mono" => BadEvent::new(*id, vars(body)?, EventKind::Monochromatic, space),
        "missing" => BadEvent::new(*id, vars(body)?, EventKind::MissingColor, space),
        "clause" => {
            let lits = body
                .iter()
                .map(|t| {
                    let (v, x) = t.split_once('=').ok_or_else(|| perr(line, format!("`{t}` is not var=value")))?;
                    Ok(Literal::new(num(line, v, "variable index")?, num(line, x, "value")?))
                })
                .collect::<Result<Vec<_>>>()?;
            BadEvent::clause(*id, lits, space)
        }
        "patterns" => {
            let (support, pats) = split(body)?;
            let pats = pats
                .iter()
                .map(|p| {
                    if p == "-" {
                        Ok(Vec::new())
                    } else {
                        p.split(',').map(|v| num::<u32>(line, v, "pattern value")).collect()
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            BadEvent::patterns(*id, support, pats, space)
        }
        "table" => {
            let (support, bits) = split(body)?;
            let [bits] = bits.as_slice() else {
                return Err(perr(line, "table needs exactly one bit string"));
            };
            let bits = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(perr(line, format!("`{c}` is not a bit"))),
                })
                .collect::<Result<Vec<_>>>()?;
            BadEvent::truth_table(*id, support, bits, space)
        }
        other => return Err(perr(line, format!("unknown event kind `{other}`"))),
    }
    .map_err(wrap)?;
    Ok(match measure {
        Some(m) => event.with_analytic_measure(m),
        None => event,
    })
}

/// Parses an instance file; errors carry the 1-based line number.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((line, other)) => return Err(perr(line, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(perr(1, "empty file")),
    }
    let mut family = None;
    let mut meta = Vec::new();
    let mut space: Option<Space> = None;
    let mut events = Vec::new();
    let mut gate: Option<InstanceGate> = None;
    let mut bound = None;
    let mut certificate_only = false;
    let mut assignment = None;
    let mut ids = std::collections::HashSet::new();
    for (line, raw) in lines {
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let (key, rest) = raw.split_once(char::is_whitespace).unwrap_or((raw, ""));
        let rest = rest.trim();
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "family" => family = Some(rest.to_string()),
            "meta" => {
                let (k, v) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if k.is_empty() {
                    return Err(perr(line, "meta needs a key"));
                }
                meta.push((k.to_string(), v.trim().to_string()));
            }
            "space" => {
                if space.is_some() {
                    return Err(perr(line, "duplicate space line"));
                }
                let s: Space = match tokens.as_slice() {
                    ["product", ds @ ..] => VariableSpace::new(parse_domains(line, ds)?)
                        .map_err(|e| perr(line, e.to_string()))?
                        .into(),
                    ["permutation", n] => PermutationSpace::new(num(line, n, "permutation size")?)
                        .map_err(|e| perr(line, e.to_string()))?
                        .into(),
                    _ => return Err(perr(line, "expected `space product <domains>` or `space permutation <n>`")),
                };
                space = Some(s);
            }
            "dependency-bound" => bound = Some(num(line, rest, "dependency bound")?),
            "certificate-only" => certificate_only = true,
            "event" => {
                let s = space.as_ref().ok_or_else(|| perr(line, "event before space"))?;
                let e = parse_event(line, &tokens, s)?;
                if !ids.insert(e.id().to_string()) {
                    return Err(perr(line, format!("duplicate event id `{}`", e.id())));
                }
                events.push(e);
            }
            "gate" => {
                let [fam, verdict] = tokens.as_slice() else {
                    return Err(perr(line, "expected `gate <family> pass|fail`"));
                };
                let passed = match *verdict {
                    "pass" => true,
                    "fail" => false,
                    _ => return Err(perr(line, "gate verdict must be pass or fail")),
                };
                gate = Some(InstanceGate::new(*fam, "", passed));
            }
            "gate-comparison" => {
                gate.as_mut().ok_or_else(|| perr(line, "gate-comparison before gate"))?.comparison = rest.to_string();
            }
            "gate-input" => {
                let g = gate.as_mut().ok_or_else(|| perr(line, "gate-input before gate"))?;
                let (k, v) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                g.inputs.push((k.to_string(), v.trim().to_string()));
            }
            "assignment" => {
                let values = tokens.iter().map(|t| num::<u32>(line, t, "assignment value")).collect::<Result<Vec<_>>>()?;
                let a = Assignment::new(values);
                if let Some(s) = &space {
                    s.check_assignment(&a).map_err(|e| perr(line, e.to_string()))?;
                }
                assignment = Some(a);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    let space = space.ok_or_else(|| perr(0, "missing space line"))?;
    let family = family.unwrap_or_else(|| "custom".to_string());
    let mut inst = Instance::new(family, space, events).map_err(|e| perr(0, e.to_string()))?;
    inst.meta = meta;
    inst.gate = gate;
    inst.dependency_bound = bound;
    inst.certificate_only = certificate_only;
    inst.assignment = assignment;
    Ok(inst)
}
