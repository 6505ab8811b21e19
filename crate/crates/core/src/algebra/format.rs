//! Line-oriented text format for algebra instances.
//!
//! ```text
//! field Q                      # or: field Fp 7
//! dim 2
//! basis e g
//! unit e:1
//! counit e:1 g:1
//! mult g g -> e:1
//! comult g -> g,g:1
//! phi g g g -> -1
//! antipode g -> g:1
//! alpha e:1 g:1
//! beta e:1 g:-1
//! grouplike g
//! ```
//!
//! Omitted entries are zero. A token that is not a basis label but is a
//! non-negative integer is read as a basis index.

use std::fmt::Write as _;

use thiserror::Error;

use crate::scalars::{Field, FieldSpec, Fp, Rational, ScalarError};
use crate::tensors::{LinMap, SparseTensor};

use super::instance::{AlgebraInstance, HopfData, InstanceError, InstanceParts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("dimension mismatch at line {line}: {message}")]
    DimensionMismatch { line: usize, message: String },
    #[error("unknown basis label `{label}` at line {line}, column {column}")]
    UnknownBasisLabel { line: usize, column: usize, label: String },
}

/// An instance over whichever field its file declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyInstance {
    Rational(AlgebraInstance<Rational>),
    Prime(AlgebraInstance<Fp>),
}

impl AnyInstance {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let lines = tokenize(text);
        let spec = parse_field_line(&lines)?;
        Ok(match spec {
            FieldSpec::Rationals => AnyInstance::Rational(parse_lines(&lines, spec)?),
            FieldSpec::PrimeField(_) => AnyInstance::Prime(parse_lines(&lines, spec)?),
        })
    }

    pub fn serialize(&self) -> String {
        match self {
            AnyInstance::Rational(h) => serialize_instance(h),
            AnyInstance::Prime(h) => serialize_instance(h),
        }
    }
}

/// Parses an instance whose declared field must match `K`.
pub fn parse_instance<K: Field>(text: &str) -> Result<AlgebraInstance<K>, ParseError> {
    let lines = tokenize(text);
    let spec = parse_field_line(&lines)?;
    if let Err(e) = K::supports(&spec) {
        let line = lines.iter().find(|l| l.keyword() == Some("field")).map_or(1, |l| l.number);
        return Err(syntax(line, 1, e.to_string()));
    }
    parse_lines(&lines, spec)
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn keyword(&self) -> Option<&'a str> {
        self.tokens.first().map(|t| t.1)
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &content[s..pos]));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &content[s..]));
        }
        if !tokens.is_empty() {
            let tokens = tokens
                .into_iter()
                .map(|(byte, tok)| (content[..byte].chars().count() + 1, tok))
                .collect();
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError {
        line,
        column,
        message: message.into(),
    }
}

fn parse_field_line(lines: &[Line<'_>]) -> Result<FieldSpec, ParseError> {
    let Some(first) = lines.first() else {
        return Err(syntax(1, 1, "empty instance file"));
    };
    if first.keyword() != Some("field") {
        return Err(syntax(first.number, first.tokens[0].0, "expected `field` as the first entry"));
    }
    let toks = &first.tokens;
    match toks.get(1).map(|t| t.1) {
        Some("Q") if toks.len() == 2 => Ok(FieldSpec::Rationals),
        Some("Fp") if toks.len() == 3 => {
            let (col, text) = toks[2];
            let p: u64 = text
                .parse()
                .map_err(|_| syntax(first.number, col, format!("invalid modulus `{text}`")))?;
            FieldSpec::prime(p).map_err(|e| syntax(first.number, col, e.to_string()))
        }
        _ => Err(syntax(first.number, toks[0].0, "expected `field Q` or `field Fp <prime>`")),
    }
}

struct Ctx<'a> {
    spec: FieldSpec,
    labels: &'a [String],
    line: usize,
}

impl Ctx<'_> {
    fn index(&self, col: usize, tok: &str) -> Result<usize, ParseError> {
        if let Some(i) = self.labels.iter().position(|l| l == tok) {
            return Ok(i);
        }
        match tok.parse::<usize>() {
            Ok(i) if i < self.labels.len() => Ok(i),
            Ok(i) => Err(ParseError::DimensionMismatch {
                line: self.line,
                message: format!("basis index {i} out of range for dimension {}", self.labels.len()),
            }),
            Err(_) => Err(ParseError::UnknownBasisLabel {
                line: self.line,
                column: col,
                label: tok.to_string(),
            }),
        }
    }

    fn scalar<K: Field>(&self, col: usize, tok: &str) -> Result<K, ParseError> {
        K::parse_in(&self.spec, tok).map_err(|e: ScalarError| syntax(self.line, col, e.to_string()))
    }

    /// `a,b,…:scalar` with exactly `arity` indices.
    fn term<K: Field>(&self, col: usize, tok: &str, arity: usize) -> Result<(Vec<usize>, K), ParseError> {
        let (idx, value) = tok
            .rsplit_once(':')
            .ok_or_else(|| syntax(self.line, col, format!("expected `label:scalar`, found `{tok}`")))?;
        let parts: Vec<&str> = idx.split(',').collect();
        if parts.len() != arity {
            return Err(syntax(
                self.line,
                col,
                format!("expected {arity} comma-separated labels in `{tok}`"),
            ));
        }
        let idx = parts.iter().map(|p| self.index(col, p)).collect::<Result<Vec<_>, _>>()?;
        let value_col = col + tok.len() - value.len();
        Ok((idx, self.scalar(value_col, value)?))
    }

    fn terms<K: Field>(&self, toks: &[(usize, &str)], arity: usize) -> Result<Vec<(Vec<usize>, K)>, ParseError> {
        toks.iter().map(|&(c, t)| self.term(c, t, arity)).collect()
    }
}

/// Tokens with their columns.
type Toks<'t, 'a> = &'t [(usize, &'a str)];

fn split_arrow<'t, 'a>(line: &'t Line<'a>) -> Result<(Toks<'t, 'a>, Toks<'t, 'a>), ParseError> {
    let pos = line
        .tokens
        .iter()
        .position(|t| t.1 == "->")
        .ok_or_else(|| syntax(line.number, line.tokens[0].0, "expected `->`"))?;
    Ok((&line.tokens[1..pos], &line.tokens[pos + 1..]))
}

fn parse_lines<K: Field>(lines: &[Line<'_>], spec: FieldSpec) -> Result<AlgebraInstance<K>, ParseError> {
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut parts: Option<InstanceParts<K>> = None;
    let mut seen_keys: std::collections::BTreeSet<(String, Vec<usize>)> = Default::default();
    let mut antipode: Option<(usize, LinMap<K>)> = None;
    let mut alpha: Option<(usize, SparseTensor<K>)> = None;
    let mut beta: Option<(usize, SparseTensor<K>)> = None;

    for line in &lines[1..] {
        let kw = line.keyword().expect("nonempty line");
        let kw_col = line.tokens[0].0;
        match kw {
            "field" => return Err(syntax(line.number, kw_col, "duplicate `field` entry")),
            "dim" => {
                if dim.is_some() {
                    return Err(syntax(line.number, kw_col, "duplicate `dim` entry"));
                }
                let (col, tok) = *line
                    .tokens
                    .get(1)
                    .filter(|_| line.tokens.len() == 2)
                    .ok_or_else(|| syntax(line.number, kw_col, "expected `dim <n>`"))?;
                let n: usize = tok
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| syntax(line.number, col, format!("invalid dimension `{tok}`")))?;
                dim = Some(n);
                continue;
            }
            "basis" => {
                let n = dim.ok_or_else(|| syntax(line.number, kw_col, "`basis` must follow `dim`"))?;
                if labels.is_some() {
                    return Err(syntax(line.number, kw_col, "duplicate `basis` entry"));
                }
                let names: Vec<String> = line.tokens[1..].iter().map(|t| t.1.to_string()).collect();
                if names.len() != n {
                    return Err(ParseError::DimensionMismatch {
                        line: line.number,
                        message: format!("`basis` lists {} labels but `dim` is {n}", names.len()),
                    });
                }
                for (i, (col, name)) in line.tokens[1..].iter().enumerate() {
                    if name.contains([',', ':']) || name == &"->" {
                        return Err(syntax(line.number, *col, format!("invalid basis label `{name}`")));
                    }
                    if names[..i].contains(&name.to_string()) {
                        return Err(syntax(line.number, *col, format!("duplicate basis label `{name}`")));
                    }
                }
                parts = Some(InstanceParts::empty(spec, names.clone()));
                labels = Some(names);
                continue;
            }
            _ => {}
        }
        let (Some(labels), Some(p)) = (labels.as_ref(), parts.as_mut()) else {
            return Err(syntax(line.number, kw_col, "`dim` and `basis` must precede structure entries"));
        };
        let n = labels.len();
        let ctx = Ctx {
            spec,
            labels,
            line: line.number,
        };
        let mut once = |key: Vec<usize>| -> Result<(), ParseError> {
            if seen_keys.insert((kw.to_string(), key.clone())) {
                Ok(())
            } else {
                Err(syntax(line.number, kw_col, format!("duplicate `{kw}` entry")))
            }
        };
        match kw {
            "unit" | "counit" | "alpha" | "beta" => {
                once(Vec::new())?;
                let mut t = SparseTensor::element(vec![n]);
                for (idx, v) in ctx.terms::<K>(&line.tokens[1..], 1)? {
                    t.add_entry(idx, v);
                }
                match kw {
                    "unit" => p.unit = t,
                    "counit" => p.counit = t.with_variance(crate::tensors::Variance::Functional),
                    "alpha" => alpha = Some((line.number, t.with_variance(crate::tensors::Variance::Functional))),
                    _ => beta = Some((line.number, t.with_variance(crate::tensors::Variance::Functional))),
                }
            }
            "mult" | "comult" | "antipode" | "phi" => {
                let (lhs, rhs) = split_arrow(line)?;
                let want = match kw {
                    "mult" => 2,
                    "phi" => 3,
                    _ => 1,
                };
                if lhs.len() != want {
                    return Err(syntax(line.number, kw_col, format!("`{kw}` takes {want} source label(s)")));
                }
                let src = lhs.iter().map(|&(c, t)| ctx.index(c, t)).collect::<Result<Vec<_>, _>>()?;
                once(src.clone())?;
                match kw {
                    "mult" => {
                        for (idx, v) in ctx.terms::<K>(rhs, 1)? {
                            p.mult.add_entry(&src, &idx, v);
                        }
                    }
                    "comult" => {
                        for (idx, v) in ctx.terms::<K>(rhs, 2)? {
                            p.comult.add_entry(&src, &idx, v);
                        }
                    }
                    "antipode" => {
                        let map = &mut antipode.get_or_insert_with(|| (line.number, LinMap::zero(vec![n], vec![n]))).1;
                        for (idx, v) in ctx.terms::<K>(rhs, 1)? {
                            map.add_entry(&src, &idx, v);
                        }
                    }
                    _ => {
                        let [(col, tok)] = rhs else {
                            return Err(syntax(line.number, kw_col, "`phi a b c -> scalar` takes one scalar"));
                        };
                        let v: K = ctx.scalar(*col, tok)?;
                        p.phi.add_entry(src, v);
                    }
                }
            }
            "grouplike" => {
                let toks = &line.tokens[1..];
                let mut t = SparseTensor::element(vec![n]);
                match toks {
                    [(col, tok)] if !tok.contains(':') => t.add_entry(vec![ctx.index(*col, tok)?], K::one_in(&spec)),
                    _ => {
                        for (idx, v) in ctx.terms::<K>(toks, 1)? {
                            t.add_entry(idx, v);
                        }
                    }
                }
                p.grouplikes.push(t);
            }
            other => return Err(syntax(line.number, kw_col, format!("unknown entry `{other}`"))),
        }
    }

    let Some(mut parts) = parts else {
        let last = lines.last().map_or(1, |l| l.number);
        return Err(syntax(last, 1, "missing `dim`/`basis` entries"));
    };
    parts.hopf = match (antipode, alpha, beta) {
        (None, None, None) => None,
        (Some((_, antipode)), Some((_, alpha)), Some((_, beta))) => Some(HopfData { antipode, alpha, beta }),
        (s, a, b) => {
            let line = [s.as_ref().map(|x| x.0), a.as_ref().map(|x| x.0), b.as_ref().map(|x| x.0)]
                .into_iter()
                .flatten()
                .min()
                .unwrap_or(1);
            let missing: Vec<&str> = [("antipode", s.is_none()), ("alpha", a.is_none()), ("beta", b.is_none())]
                .into_iter()
                .filter(|x| x.1)
                .map(|x| x.0)
                .collect();
            return Err(syntax(
                line,
                1,
                format!(
                    "antipode, alpha and beta must be given together (missing: {})",
                    missing.join(", ")
                ),
            ));
        }
    };
    AlgebraInstance::from_parts(parts).map_err(|e| match e {
        InstanceError::DimensionMismatch(message) => ParseError::DimensionMismatch { line: 0, message },
        InstanceError::Field(e) => syntax(1, 1, e.to_string()),
    })
}

/// Canonical text form. Parsing the output yields an equal instance.
pub fn serialize_instance<K: Field>(h: &AlgebraInstance<K>) -> String {
    let p = h.parts();
    let l = &p.labels;
    let n = l.len();
    let mut out = String::new();
    let terms1 = |t: &SparseTensor<K>| -> String {
        t.iter()
            .map(|(k, v)| format!(" {}:{}", l[k[0]], v))
            .collect::<String>()
    };
    writeln!(out, "field {}", p.field).ok();
    writeln!(out, "dim {n}").ok();
    writeln!(out, "basis {}", l.join(" ")).ok();
    writeln!(out, "unit{}", terms1(&p.unit)).ok();
    writeln!(out, "counit{}", terms1(&p.counit)).ok();
    for i in 0..n {
        for j in 0..n {
            let img: String = p.mult.image(&[i, j]).map(|(k, v)| format!(" {}:{}", l[k[0]], v)).collect();
            if !img.is_empty() {
                writeln!(out, "mult {} {} ->{img}", l[i], l[j]).ok();
            }
        }
    }
    for i in 0..n {
        let img: String = p
            .comult
            .image(&[i])
            .map(|(k, v)| format!(" {},{}:{}", l[k[0]], l[k[1]], v))
            .collect();
        if !img.is_empty() {
            writeln!(out, "comult {} ->{img}", l[i]).ok();
        }
    }
    for (k, v) in p.phi.iter() {
        writeln!(out, "phi {} {} {} -> {v}", l[k[0]], l[k[1]], l[k[2]]).ok();
    }
    if let Some(hd) = &p.hopf {
        let mut any = false;
        for i in 0..n {
            let img: String = hd.antipode.image(&[i]).map(|(k, v)| format!(" {}:{}", l[k[0]], v)).collect();
            if !img.is_empty() {
                writeln!(out, "antipode {} ->{img}", l[i]).ok();
                any = true;
            }
        }
        if !any {
            // keep the antipode block present even when S = 0
            writeln!(out, "antipode {} ->", l[0]).ok();
        }
        writeln!(out, "alpha{}", terms1(&hd.alpha)).ok();
        writeln!(out, "beta{}", terms1(&hd.beta)).ok();
    }
    for g in &p.grouplikes {
        if g.is_empty() {
            writeln!(out, "grouplike").ok();
        } else {
            writeln!(out, "grouplike {}", h.format_element(g)).ok();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const KZ2: &str = "\
field Q
dim 2
basis e g
unit e:1
counit e:1 g:1
mult e e -> e:1
mult e g -> g:1
mult g e -> g:1
mult g g -> e:1
comult e -> e,e:1
comult g -> g,g:1
phi e e e -> 1
antipode e -> e:1
antipode g -> g:1
alpha e:1 g:1
beta  e:1 g:-1
grouplike e
grouplike g
";

    #[test]
    fn parses_group_algebra_file() {
        let h = parse_instance::<Rational>(KZ2).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.labels(), &["e".to_string(), "g".to_string()]);
        assert_eq!(h.grouplikes().len(), 2);
        assert_eq!(h.hopf().unwrap().beta.coeff(&[1]).to_string(), "-1");
        let again = parse_instance::<Rational>(&serialize_instance(&h)).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn any_instance_dispatches_on_field() {
        assert!(matches!(AnyInstance::parse(KZ2).unwrap(), AnyInstance::Rational(_)));
        let f7 = KZ2.replace("field Q", "field Fp 7");
        let AnyInstance::Prime(h) = AnyInstance::parse(&f7).unwrap() else {
            panic!("expected prime field instance")
        };
        assert_eq!(h.hopf().unwrap().beta.coeff(&[1]).value(), 6);
        assert!(parse_instance::<Rational>(&f7).is_err());
    }

    #[test]
    fn index_out_of_range_is_dimension_mismatch() {
        let bad = KZ2.replace("mult g g -> e:1", "mult g g -> 5:1");
        assert!(matches!(
            parse_instance::<Rational>(&bad),
            Err(ParseError::DimensionMismatch { line: 9, .. })
        ));
    }

    #[test]
    fn unknown_label() {
        let bad = KZ2.replace("comult g -> g,g:1", "comult g -> g,h:1");
        assert_eq!(
            parse_instance::<Rational>(&bad),
            Err(ParseError::UnknownBasisLabel {
                line: 11,
                column: 13,
                label: "h".into()
            })
        );
    }

    #[test]
    fn antipode_triple_rule() {
        let bad = KZ2.replace("beta  e:1 g:-1\n", "");
        match parse_instance::<Rational>(&bad) {
            Err(ParseError::SyntaxError { message, .. }) => {
                assert!(message.contains("must be given together"), "{message}");
                assert!(message.contains("beta"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bialgebra_only_file() {
        let text: String = KZ2
            .lines()
            .filter(|l| !l.starts_with("antipode") && !l.starts_with("alpha") && !l.starts_with("beta"))
            .map(|l| format!("{l}\n"))
            .collect();
        let h = parse_instance::<Rational>(&text).unwrap();
        assert!(h.hopf().is_none());
    }

    #[test]
    fn syntax_errors_carry_location() {
        let bad = KZ2.replace("counit e:1 g:1", "counit e:1 g:x");
        assert!(matches!(
            parse_instance::<Rational>(&bad),
            Err(ParseError::SyntaxError { line: 5, column: 14, .. })
        ));
        let bad = KZ2.replace("dim 2", "dim 3");
        assert!(matches!(parse_instance::<Rational>(&bad), Err(ParseError::DimensionMismatch { line: 3, .. })));
        let dup = format!("{KZ2}mult g g -> e:1\n");
        assert!(matches!(parse_instance::<Rational>(&dup), Err(ParseError::SyntaxError { .. })));
        assert!(parse_instance::<Rational>("").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n\n{}", KZ2.replace("dim 2", "dim 2   # two"));
        assert!(parse_instance::<Rational>(&text).is_ok());
    }
}
