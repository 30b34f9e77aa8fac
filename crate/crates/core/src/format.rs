//! Line-oriented text formats for the four instance kinds.
//!
//! ```text
//! pot <n>                  ia <n>                  csp <n>                 poset <n>
//! c <i> <j> lt|inc         c <i> <j> o|d|m         dom <size>              le <i> <j>
//!                                                  rel <arity> <vars..> <count>
//!                                                  <tuple>  (count lines)
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Relation lists are
//! `|`-joined tokens; `none` is the empty list. A constraint line `c i j R`
//! with `i > j` is stored as the converse on `(j, i)`, and repeated lines on
//! one pair intersect.

use std::fmt::Write as _;

use thiserror::Error;

use crate::csp::{Constraint, CspInstance};
use crate::error::{InstanceError, OrderError};
use crate::interval::{BasicRel, IaInstance, RelSet13};
use crate::order::{make_partial_order, PartialOrder, PotInstance, Rel4, RelSet4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Instance { line: usize, source: InstanceError },
    #[error("invalid partial order: {0}")]
    Order(#[from] OrderError),
    #[error("input has no header line")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Pot(PotInstance),
    Ia(IaInstance),
    Csp(CspInstance),
    Poset(PartialOrder),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Pot(_) => "pot",
            Instance::Ia(_) => "ia",
            Instance::Csp(_) => "csp",
            Instance::Poset(_) => "poset",
        }
    }

    /// The first pair whose constraint intersected to the empty set.
    pub fn empty_constraint(&self) -> Option<(usize, usize)> {
        match self {
            Instance::Pot(p) => p.constraints().find(|(_, r)| r.is_empty()).map(|(k, _)| k),
            Instance::Ia(p) => p.constraints().find(|(_, r)| r.is_empty()).map(|(k, _)| k),
            _ => None,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

fn no_more<'a>(line: usize, mut rest: impl Iterator<Item = &'a str>) -> Result<(), ParseError> {
    match rest.next() {
        Some(tok) => Err(syntax(line, format!("unexpected `{tok}`"))),
        None => Ok(()),
    }
}

fn relation_list<T: Copy>(
    line: usize,
    tok: Option<&str>,
    lookup: impl Fn(&str) -> Option<T>,
) -> Result<Vec<T>, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing relation list"))?;
    if tok == "none" {
        return Ok(Vec::new());
    }
    tok.split('|')
        .map(|t| lookup(t).ok_or_else(|| syntax(line, format!("unknown relation `{t}`"))))
        .collect()
}

/// Parses any of the four formats, dispatching on the header token.
pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut toks = header.split_whitespace();
    let kind = toks.next().unwrap_or_default();
    let n = number(hline, toks.next(), "size")?;
    no_more(hline, toks)?;
    match kind {
        "pot" => {
            let mut inst = PotInstance::new(n);
            for (line, l) in lines {
                let (i, j, rels) = constraint_line(line, l, Rel4::from_token)?;
                inst.constrain(i, j, rels.into_iter().collect())
                    .map_err(|source| ParseError::Instance { line, source })?;
            }
            Ok(Instance::Pot(inst))
        }
        "ia" => {
            let mut inst = IaInstance::new(n);
            for (line, l) in lines {
                let (i, j, rels) = constraint_line(line, l, BasicRel::from_token)?;
                inst.constrain(i, j, rels.into_iter().collect())
                    .map_err(|source| ParseError::Instance { line, source })?;
            }
            Ok(Instance::Ia(inst))
        }
        "poset" => {
            let mut pairs = Vec::new();
            for (line, l) in lines {
                let mut toks = l.split_whitespace();
                if toks.next() != Some("le") {
                    return Err(syntax(line, "expected `le <i> <j>`"));
                }
                let a = number(line, toks.next(), "element")?;
                let b = number(line, toks.next(), "element")?;
                no_more(line, toks)?;
                pairs.push((a, b));
            }
            Ok(Instance::Poset(make_partial_order(n, &pairs)?))
        }
        "csp" => parse_csp(n, lines).map(Instance::Csp),
        other => Err(syntax(hline, format!("unknown header `{other}`"))),
    }
}

fn constraint_line<T: Copy>(
    line: usize,
    l: &str,
    lookup: impl Fn(&str) -> Option<T>,
) -> Result<(usize, usize, Vec<T>), ParseError> {
    let mut toks = l.split_whitespace();
    if toks.next() != Some("c") {
        return Err(syntax(line, "expected `c <i> <j> <relations>`"));
    }
    let i = number(line, toks.next(), "variable")?;
    let j = number(line, toks.next(), "variable")?;
    let rels = relation_list(line, toks.next(), lookup)?;
    no_more(line, toks)?;
    if i == j {
        return Err(ParseError::Instance {
            line,
            source: InstanceError::SelfLoop(i),
        });
    }
    Ok((i, j, rels))
}

fn parse_csp<'a>(
    n: usize,
    mut lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<CspInstance, ParseError> {
    let mut inst = CspInstance::new(n);
    let mut domain = None;
    while let Some((line, l)) = lines.next() {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("dom") => {
                domain = Some((line, number(line, toks.next(), "domain size")?));
                no_more(line, toks)?;
            }
            Some("rel") => {
                let arity = number(line, toks.next(), "arity")?;
                let scope = (0..arity)
                    .map(|_| number(line, toks.next(), "scope variable"))
                    .collect::<Result<Vec<_>, _>>()?;
                let count = number(line, toks.next(), "tuple count")?;
                no_more(line, toks)?;
                let mut tuples = Vec::with_capacity(count);
                for _ in 0..count {
                    let (tline, t) = lines
                        .next()
                        .ok_or_else(|| syntax(line, "relation ends before its tuples"))?;
                    let tuple = t
                        .split_whitespace()
                        .map(|v| {
                            v.parse::<i64>().map_err(|_| {
                                syntax(tline, format!("value `{v}` is not an integer"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    tuples.push((tline, tuple));
                }
                if let Some((tline, t)) = tuples.iter().find(|(_, t)| t.len() != arity) {
                    return Err(ParseError::Instance {
                        line: *tline,
                        source: InstanceError::ArityMismatch {
                            expected: arity,
                            found: t.len(),
                        },
                    });
                }
                let c = Constraint::new(scope, tuples.into_iter().map(|(_, t)| t).collect())
                    .map_err(|source| ParseError::Instance { line, source })?;
                inst.add(c)
                    .map_err(|source| ParseError::Instance { line, source })?;
            }
            _ => return Err(syntax(line, "expected `dom <size>` or `rel ...`")),
        }
    }
    if let Some((line, size)) = domain {
        inst.declare_domain(size)
            .map_err(|source| ParseError::Instance { line, source })?;
    }
    Ok(inst)
}

fn join<T>(items: impl Iterator<Item = T>, token: impl Fn(T) -> &'static str) -> String {
    let parts: Vec<&str> = items.map(token).collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join("|")
    }
}

pub fn write_pot(inst: &PotInstance) -> String {
    let mut out = format!("pot {}\n", inst.len());
    for ((i, j), r) in inst.constraints() {
        writeln!(out, "c {i} {j} {}", join(r.iter(), Rel4::token)).unwrap();
    }
    out
}

pub fn write_ia(inst: &IaInstance) -> String {
    let mut out = format!("ia {}\n", inst.len());
    for ((i, j), r) in inst.constraints() {
        writeln!(out, "c {i} {j} {}", join(r.iter(), BasicRel::token)).unwrap();
    }
    out
}

pub fn write_csp(inst: &CspInstance) -> String {
    let mut out = format!("csp {}\n", inst.len());
    if let Some(d) = inst.declared_domain() {
        writeln!(out, "dom {d}").unwrap();
    }
    for c in inst.constraints() {
        let scope: Vec<String> = c.scope().iter().map(usize::to_string).collect();
        writeln!(
            out,
            "rel {} {} {}",
            c.arity(),
            scope.join(" "),
            c.tuples().len()
        )
        .unwrap();
        for t in c.tuples() {
            let vals: Vec<String> = t.iter().map(i64::to_string).collect();
            writeln!(out, "{}", vals.join(" ")).unwrap();
        }
    }
    out
}

pub fn write_poset(p: &PartialOrder) -> String {
    let mut out = format!("poset {}\n", p.len());
    for (a, b) in p.strict_pairs() {
        writeln!(out, "le {a} {b}").unwrap();
    }
    out
}

pub fn write(inst: &Instance) -> String {
    match inst {
        Instance::Pot(p) => write_pot(p),
        Instance::Ia(p) => write_ia(p),
        Instance::Csp(p) => write_csp(p),
        Instance::Poset(p) => write_poset(p),
    }
}

pub fn pot_relations(tokens: &str) -> Option<RelSet4> {
    relation_list(0, Some(tokens), Rel4::from_token)
        .ok()
        .map(|v| v.into_iter().collect())
}

pub fn ia_relations(tokens: &str) -> Option<RelSet13> {
    relation_list(0, Some(tokens), BasicRel::from_token)
        .ok()
        .map(|v| v.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pot_lines() {
        let inst = parse("pot 2\nc 0 1 lt|inc\n").unwrap();
        let Instance::Pot(p) = &inst else { panic!() };
        assert_eq!(p.allowed(0, 1), pot_relations("lt|inc").unwrap());
        assert_eq!(write(&inst), "pot 2\nc 0 1 lt|inc\n");
    }

    #[test]
    fn reversed_and_repeated_lines() {
        let inst = parse("# header comment\npot 3\nc 1 0 lt|gt\n\nc 0 1 gt|eq\n").unwrap();
        let Instance::Pot(p) = &inst else { panic!() };
        assert_eq!(p.allowed(0, 1), RelSet4::single(Rel4::Gt));
    }

    #[test]
    fn empty_intersection_is_kept() {
        let inst = parse("ia 2\nc 0 1 m\nc 0 1 p\n").unwrap();
        assert_eq!(inst.empty_constraint(), Some((0, 1)));
        assert_eq!(write(&inst), "ia 2\nc 0 1 none\n");
        assert_eq!(parse(&write(&inst)).unwrap(), inst);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(
            parse("pot 2\nc 0 0 lt\n"),
            Err(ParseError::Instance {
                line: 2,
                source: InstanceError::SelfLoop(0)
            })
        );
        assert!(matches!(
            parse("pot 2\n\nc 0 1 xx\n"),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse("pot 2\nc 0 5 lt\n"),
            Err(ParseError::Instance { line: 2, .. })
        ));
        assert!(matches!(
            parse("graph 2\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert_eq!(parse("# nothing\n"), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse("poset 2\nle 0 1\nle 1 0\n"),
            Err(ParseError::Order(_))
        ));
    }

    #[test]
    fn csp_blocks() {
        let text = "csp 3\ndom 2\nrel 2 0 1 2\n0 1\n1 0\nrel 1 2 1\n1\n";
        let inst = parse(text).unwrap();
        let Instance::Csp(c) = &inst else { panic!() };
        assert_eq!(c.constraints().len(), 2);
        assert_eq!(write(&inst), text);
        assert!(matches!(
            parse("csp 2\ndom 1\nrel 1 0 1\n3\n"),
            Err(ParseError::Instance { .. })
        ));
        assert!(matches!(
            parse("csp 2\nrel 2 0 1 2\n0 1\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("csp 2\nrel 2 0 1 1\n0 1 1\n"),
            Err(ParseError::Instance { line: 3, .. })
        ));
    }

    #[test]
    fn poset_closure() {
        let inst = parse("poset 3\nle 0 1\nle 1 2\n").unwrap();
        assert_eq!(write(&inst), "poset 3\nle 0 1\nle 0 2\nle 1 2\n");
    }
}
