//! Line-oriented text format for instances, witnesses and certificates.
//!
//! ```text
//! # comment lines start with '#'
//! ssp          kind tag: ssp | sspp | tssp | conj | cert | sol
//! 3            n
//! 3 5 7        payload rows, whitespace separated
//! 8
//! ```
//!
//! Payloads by kind:
//!
//! | kind              | rows                                   |
//! |-------------------|----------------------------------------|
//! | `ssp` `sspp` `tssp` | `n` coefficients, then the target     |
//! | `conj`            | `u` and `v`, `2n + 1` exponents each   |
//! | `cert`            | the conjugator `w`, `2n + 1` exponents |
//! | `sol`             | `n` variable values                    |
//!
//! Integers are arbitrary-precision decimals with an optional sign.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::conjugacy::Certificate;
use crate::error::{Error, Location, Result};
use crate::group::{GroupContext, GroupElement};
use crate::reductions::{ConjugacyInstance, SspInstance, SspPrimeInstance, SspPrimeSolution};
use crate::tssp::{Assignment, TsspInstance};

/// Values of a `sol` file: bits for SSP/TSSP, `{-1, 0, 1}` for SSP'.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub values: Vec<BigInt>,
}

impl Witness {
    pub fn from_assignment(x: &Assignment) -> Self {
        Self { values: x.bits().iter().map(|&b| BigInt::from(b as u8)).collect() }
    }

    pub fn from_sspprime(x: &SspPrimeSolution) -> Self {
        Self { values: x.values().iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn to_assignment(&self) -> Result<Assignment> {
        let mut bits = Vec::with_capacity(self.values.len());
        for v in &self.values {
            match i8::try_from(v) {
                Ok(0) => bits.push(false),
                Ok(1) => bits.push(true),
                _ => return Err(Error::InvalidParameter(format!("expected a 0/1 value, got {v}"))),
            }
        }
        Ok(Assignment::new(bits))
    }

    pub fn to_sspprime(&self) -> Result<SspPrimeSolution> {
        let values = self
            .values
            .iter()
            .map(|v| {
                i8::try_from(v)
                    .map_err(|_| Error::InvalidParameter(format!("expected a value in {{-1, 0, 1}}, got {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SspPrimeSolution::new(values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceFile {
    Ssp(SspInstance),
    SspPrime(SspPrimeInstance),
    Tssp(TsspInstance),
    Conj(ConjugacyInstance),
    Cert { ctx: GroupContext, cert: Certificate },
    Sol(Witness),
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Ssp(_) => "ssp",
            Self::SspPrime(_) => "sspp",
            Self::Tssp(_) => "tssp",
            Self::Conj(_) => "conj",
            Self::Cert { .. } => "cert",
            Self::Sol(_) => "sol",
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Row<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

fn tokenize(line: &str) -> (Vec<Token<'_>>, usize) {
    let mut tokens = Vec::new();
    let mut start = None;
    let mut column = 0;
    for (i, ch) in line.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((s, c)) = start.take() {
                tokens.push(Token { text: &line[s..i], column: c });
            }
        } else if start.is_none() {
            start = Some((i, column));
        }
    }
    if let Some((s, c)) = start {
        tokens.push(Token { text: &line[s..], column: c });
    }
    (tokens, column + 1)
}

struct Parser<'a> {
    rows: std::vec::IntoIter<Row<'a>>,
    last_line: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { location: Location { line, column }, message: message.into() }
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let mut rows = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (tokens, end_column) = tokenize(raw);
            rows.push(Row { line: i + 1, tokens, end_column });
        }
        Self { rows: rows.into_iter(), last_line }
    }

    fn next_row(&mut self, what: &str) -> Result<Row<'a>> {
        self.rows
            .next()
            .ok_or_else(|| parse_error(self.last_line + 1, 1, format!("missing {what} line")))
    }

    fn integers(&mut self, what: &str, count: usize) -> Result<Vec<BigInt>> {
        let row = self.next_row(what)?;
        if row.tokens.len() < count {
            return Err(parse_error(
                row.line,
                row.end_column,
                format!("{what} needs {count} integers, found {}", row.tokens.len()),
            ));
        }
        if let Some(extra) = row.tokens.get(count) {
            return Err(parse_error(
                row.line,
                extra.column,
                format!("{what} needs {count} integers, found {}", row.tokens.len()),
            ));
        }
        row.tokens
            .iter()
            .map(|t| {
                BigInt::from_str(t.text)
                    .map_err(|_| parse_error(row.line, t.column, format!("`{}` is not an integer", t.text)))
            })
            .collect()
    }

    fn single(&mut self, what: &str) -> Result<(usize, Token<'a>)> {
        let row = self.next_row(what)?;
        if let Some(extra) = row.tokens.get(1) {
            return Err(parse_error(row.line, extra.column, format!("unexpected token after {what}")));
        }
        let token = row.tokens.into_iter().next().expect("blank lines are skipped");
        Ok((row.line, token))
    }

    fn kind(&mut self) -> Result<(&'a str, usize, usize)> {
        let (line, t) = self.single("kind tag")?;
        Ok((t.text, line, t.column))
    }

    fn size(&mut self) -> Result<usize> {
        let (line, t) = self.single("size")?;
        t.text
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| parse_error(line, t.column, format!("`{}` is not a positive size", t.text)))
    }

    fn finish(mut self) -> Result<()> {
        match self.rows.next() {
            None => Ok(()),
            Some(row) => Err(parse_error(row.line, row.tokens[0].column, "unexpected trailing content")),
        }
    }
}

/// Parses any instance file; errors carry the 1-based line and column.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut p = Parser::new(text);
    let (kind, line, column) = p.kind()?;
    let file = match kind {
        "ssp" | "sspp" | "tssp" => {
            let n = p.size()?;
            let coefficients = p.integers("coefficient", n)?;
            let target = p.integers("target", 1)?.pop().expect("one integer");
            match kind {
                "ssp" => InstanceFile::Ssp(SspInstance::new(coefficients, target)?),
                "sspp" => InstanceFile::SspPrime(SspPrimeInstance::new(coefficients, target)?),
                _ => InstanceFile::Tssp(TsspInstance::new(coefficients, target)?),
            }
        }
        "conj" => {
            let n = p.size()?;
            let ctx = GroupContext::new(n)?;
            let u = p.integers("u", ctx.hirsch())?;
            let v = p.integers("v", ctx.hirsch())?;
            InstanceFile::Conj(ConjugacyInstance::new(ctx, GroupElement::new(u), GroupElement::new(v))?)
        }
        "cert" => {
            let n = p.size()?;
            let ctx = GroupContext::new(n)?;
            let w = ctx.element(p.integers("w", ctx.hirsch())?)?;
            InstanceFile::Cert { ctx, cert: Certificate::new(w) }
        }
        "sol" => {
            let n = p.size()?;
            InstanceFile::Sol(Witness { values: p.integers("value", n)? })
        }
        other => return Err(parse_error(line, column, format!("unknown kind tag `{other}`"))),
    };
    p.finish()?;
    Ok(file)
}

fn push_row<'a>(out: &mut String, values: impl IntoIterator<Item = &'a BigInt>) {
    for (i, v) in values.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").expect("writing to a String");
    }
    out.push('\n');
}

pub fn serialize_instance(file: &InstanceFile) -> String {
    let mut out = format!("{}\n", file.kind());
    match file {
        InstanceFile::Ssp(i) => {
            writeln!(out, "{}", i.n()).unwrap();
            push_row(&mut out, i.coefficients());
            push_row(&mut out, [i.target()]);
        }
        InstanceFile::SspPrime(i) => {
            writeln!(out, "{}", i.n()).unwrap();
            push_row(&mut out, i.coefficients());
            push_row(&mut out, [i.target()]);
        }
        InstanceFile::Tssp(i) => {
            writeln!(out, "{}", i.n()).unwrap();
            push_row(&mut out, i.coefficients());
            push_row(&mut out, [i.target()]);
        }
        InstanceFile::Conj(c) => {
            writeln!(out, "{}", c.ctx.n()).unwrap();
            push_row(&mut out, c.u.exponents());
            push_row(&mut out, c.v.exponents());
        }
        InstanceFile::Cert { ctx, cert } => {
            writeln!(out, "{}", ctx.n()).unwrap();
            push_row(&mut out, cert.w.exponents());
        }
        InstanceFile::Sol(w) => {
            writeln!(out, "{}", w.values.len()).unwrap();
            push_row(&mut out, &w.values);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn location(err: Error) -> (usize, usize) {
        match err {
            Error::Parse { location, .. } => (location.line, location.column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_instance("ssp\n3\n3 5 7\n8\n").unwrap(),
            InstanceFile::Ssp(SspInstance::from_i64s(&[3, 5, 7], 8).unwrap())
        );
        let ctx = GroupContext::new(1).unwrap();
        assert_eq!(
            parse_instance("conj\n1\n0 0 5\n-5 0 5\n").unwrap(),
            InstanceFile::Conj(
                ConjugacyInstance::new(ctx, GroupElement::from_i64s(&[0, 0, 5]), GroupElement::from_i64s(&[-5, 0, 5]))
                    .unwrap()
            )
        );
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\n\ntssp\n  # size follows\n2\n 3   5\n-2";
        assert_eq!(
            parse_instance(text).unwrap(),
            InstanceFile::Tssp(TsspInstance::from_i64s(&[3, 5], -2).unwrap())
        );
    }

    #[test]
    fn missing_target_line() {
        assert_eq!(location(parse_instance("ssp\n2\n3 5\n").unwrap_err()), (4, 1));
    }

    #[test]
    fn diagnostics_point_at_tokens() {
        assert_eq!(location(parse_instance("knap\n2\n").unwrap_err()), (1, 1));
        assert_eq!(location(parse_instance("ssp\n2\n3 x5\n1\n").unwrap_err()), (3, 3));
        assert_eq!(location(parse_instance("ssp\n2\n3 5 7\n1\n").unwrap_err()), (3, 5));
        assert_eq!(location(parse_instance("ssp\n2\n3\n1\n").unwrap_err()), (3, 2));
        assert_eq!(location(parse_instance("ssp\n0\n").unwrap_err()), (2, 1));
        assert_eq!(location(parse_instance("ssp\n1\n3\n1\n4\n").unwrap_err()), (5, 1));
        assert_eq!(location(parse_instance("ssp 2\n").unwrap_err()), (1, 5));
        assert_eq!(location(parse_instance("").unwrap_err()), (1, 1));
        assert_eq!(location(parse_instance("conj\n1\n0 0\n").unwrap_err()), (3, 4));
    }

    #[test]
    fn round_trips_every_kind() {
        let ctx = GroupContext::new(2).unwrap();
        let files = [
            InstanceFile::Ssp(SspInstance::from_i64s(&[3, -5, 7], 8).unwrap()),
            InstanceFile::SspPrime(SspPrimeInstance::from_i64s(&[4], -4).unwrap()),
            InstanceFile::Tssp(TsspInstance::new(vec![BigInt::from(1) << 100usize], BigInt::from(-3)).unwrap()),
            InstanceFile::Conj(
                ConjugacyInstance::new(
                    ctx,
                    GroupElement::from_i64s(&[0, 0, 3, 0, 5]),
                    GroupElement::from_i64s(&[2, 0, 3, 0, 5]),
                )
                .unwrap(),
            ),
            InstanceFile::Cert { ctx, cert: Certificate::new(GroupElement::from_i64s(&[0, 1, 0, 1, 0])) },
            InstanceFile::Sol(Witness::from_sspprime(&SspPrimeSolution::new(vec![-1, 0, 1]).unwrap())),
        ];
        for f in files {
            let text = serialize_instance(&f);
            assert_eq!(parse_instance(&text).unwrap(), f, "{text}");
        }
    }

    #[test]
    fn serialized_layout() {
        let f = InstanceFile::Ssp(SspInstance::from_i64s(&[3, 5, 7], 8).unwrap());
        assert_eq!(serialize_instance(&f), "ssp\n3\n3 5 7\n8\n");
    }

    #[test]
    fn witness_conversions() {
        let w = Witness { values: vec![1.into(), 0.into()] };
        assert_eq!(w.to_assignment().unwrap(), Assignment::from_bits(&[1, 0]));
        let w = Witness { values: vec![(-1).into()] };
        assert!(w.to_assignment().is_err());
        assert_eq!(w.to_sspprime().unwrap().values(), &[-1]);
        let w = Witness { values: vec![2.into()] };
        assert!(w.to_sspprime().is_err());
    }
}
