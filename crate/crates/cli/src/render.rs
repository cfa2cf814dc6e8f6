use ballgap_core::Poly;
use serde::Serialize;

/// One JSON output line: `{"type": kind, ...body}`.
#[derive(Serialize)]
pub struct Line<'a, T: Serialize> {
    #[serde(rename = "type")]
    pub kind: &'static str,
    #[serde(flatten)]
    pub body: &'a T,
}

/// Readable form of a polynomial in `(z, w~)` variables, where the first
/// `n` variables are `z` and the rest are `w~`.
pub fn human_poly(p: &Poly, n: usize) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let mut factors = Vec::new();
            let coeff = c.to_string();
            if coeff != "1/1" {
                factors.push(format!("({coeff})"));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                let name = if i < n { format!("z{i}") } else { format!("w~{}", i - n) };
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                "1".into()
            } else {
                factors.join("*")
            }
        })
        .collect();
    terms.join(" + ")
}
