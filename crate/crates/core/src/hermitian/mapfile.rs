//! Map files.
//!
//! ```text
//! source 1 2 0
//! target 1 2 0
//! degree 3
//! %pos
//! 1/1 3 0 0
//! %neg
//! 1/1 2 1 0
//! 1/1 2 0 1
//! %null
//! ```
//!
//! Components use the polynomial text format, one per line, in target
//! block order. Blank lines and `#` comments are ignored.

use super::{Signature, SignedMap};
use crate::error::{Error, Result};
use crate::poly::text::{format_poly, parse_poly_line};
use crate::poly::Poly;

pub fn format_map(f: &SignedMap) -> String {
    let sig = |s: Signature| format!("{} {} {}", s.r, s.s, s.t);
    let mut out = format!(
        "source {}\ntarget {}\ndegree {}\n",
        sig(f.source()),
        sig(f.target()),
        f.degree()
    );
    for (tag, block) in [("%pos", f.positive()), ("%neg", f.negative()), ("%null", f.null())] {
        out.push_str(tag);
        out.push('\n');
        for p in block {
            out.push_str(&format_poly(p));
            out.push('\n');
        }
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str, arity: usize) -> Result<(usize, Vec<usize>)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(0, format!("missing `{key}` header")))?;
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(key) {
        return Err(parse_err(no, format!("expected `{key}` header")));
    }
    let vals = tokens
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(no, format!("bad number `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != arity {
        return Err(parse_err(no, format!("`{key}` takes {arity} numbers")));
    }
    Ok((no, vals))
}

fn signature((line, vals): (usize, Vec<usize>)) -> Result<Signature> {
    Signature::new(vals[0], vals[1], vals[2]).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_map(text: &str) -> Result<SignedMap> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let source = signature(header(&mut lines, "source", 3)?)?;
    let target = signature(header(&mut lines, "target", 3)?)?;
    let (no, degree) = header(&mut lines, "degree", 1)?;
    let degree = u32::try_from(degree[0]).map_err(|_| parse_err(no, "degree too large"))?;

    let n = source.n_coords();
    let tags = ["%pos", "%neg", "%null"];
    let mut blocks: [Vec<Poly>; 3] = Default::default();
    let mut current: Option<usize> = None;
    let mut last_line = 0;
    for (no, line) in lines {
        last_line = no;
        if line.starts_with('%') {
            let idx = tags
                .iter()
                .position(|t| *t == line)
                .ok_or_else(|| parse_err(no, format!("unknown block `{line}`")))?;
            if current.is_some_and(|c| idx <= c) {
                return Err(parse_err(no, format!("block `{line}` out of order")));
            }
            current = Some(idx);
            continue;
        }
        let block = current.ok_or_else(|| parse_err(no, "component before `%pos`"))?;
        let p = parse_poly_line(line, Some(n)).map_err(|msg| parse_err(no, msg))?;
        p.check_homogeneous(degree)
            .map_err(|e| parse_err(no, e.to_string()))?;
        blocks[block].push(p);
    }
    let expected = [target.r, target.s, target.t];
    for (i, tag) in tags.iter().enumerate() {
        if blocks[i].len() != expected[i] {
            return Err(parse_err(
                last_line,
                format!("`{tag}` has {} components, target needs {}", blocks[i].len(), expected[i]),
            ));
        }
    }
    let comps = blocks.into_iter().flatten().collect();
    SignedMap::new(source, target, degree, comps)
}
