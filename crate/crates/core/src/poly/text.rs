//! Line-oriented polynomial text format.
//!
//! One polynomial per line. Terms are separated by `;` and each term reads
//! `COEFF e0 e1 ... en`, where `COEFF` is `p/q` or `p/q,r/s` (imaginary
//! part after the comma). The zero polynomial is written `0`. Output is
//! canonical: terms in descending graded-lex order, separated by `"; "`,
//! coefficients in lowest terms, so `format(parse(s)) == s` for any
//! canonical `s`.

use super::{GRat, Poly};
use crate::error::{Error, Result};

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push_str(&c.to_string());
        for e in m.exps() {
            out.push(' ');
            out.push_str(&e.to_string());
        }
    }
    out
}

/// Parses one line. `n_vars` is required to type the zero polynomial and,
/// when given, is enforced on every term.
pub fn parse_poly_line(line: &str, n_vars: Option<usize>) -> std::result::Result<Poly, String> {
    let line = line.trim();
    if line == "0" {
        return n_vars
            .map(Poly::zero)
            .ok_or_else(|| "zero polynomial needs a known variable count".to_string());
    }
    let mut expected = n_vars;
    let mut terms = Vec::new();
    for (i, term) in line.split(';').enumerate() {
        let mut tokens = term.split_whitespace();
        let coeff: GRat = tokens
            .next()
            .ok_or_else(|| format!("term {} is empty", i + 1))?
            .parse()?;
        let exps = tokens
            .map(|t| t.parse::<u32>().map_err(|_| format!("bad exponent `{t}`")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        match expected {
            Some(n) if n != exps.len() => {
                return Err(format!(
                    "term {} has {} exponents, expected {n}",
                    i + 1,
                    exps.len()
                ))
            }
            None => expected = Some(exps.len()),
            _ => {}
        }
        terms.push((coeff, exps));
    }
    let n = expected.unwrap_or(0);
    Poly::from_terms(n, terms).map_err(|e| e.to_string())
}

/// Parses a whole file; blank lines and `#` comments are skipped. Errors
/// carry 1-based line numbers.
pub fn parse_polys(text: &str, n_vars: Option<usize>) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut expected = n_vars;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let p = parse_poly_line(t, expected).map_err(|msg| Error::Parse { line: i + 1, msg })?;
        expected = Some(p.n_vars());
        out.push(p);
    }
    Ok(out)
}

pub fn format_polys(polys: &[Poly]) -> String {
    let mut s = String::new();
    for p in polys {
        s.push_str(&format_poly(p));
        s.push('\n');
    }
    s
}
