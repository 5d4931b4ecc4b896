//! Text format for polynomial and point data files.
//!
//! ```text
//! # comment
//! vars: x y z w; weights: 1 1 1 6; field: g^5=g^2+1
//! s = g^16*x^8*y^3*z + x^2*z^10
//!   + y^12
//! p4 = (g^29 : g^6 : 1)
//! ```
//!
//! Lines starting with whitespace or `+` continue the previous entry.

use crate::gf2m::{parse_field_equation, Field};
use crate::poly::{Monomial, MultiPoly, PolyError, ProjPoint};

#[derive(Debug, Clone)]
pub struct PolyFile {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub polys: Vec<(String, MultiPoly)>,
    pub points: Vec<(String, ProjPoint)>,
}

impl PolyFile {
    pub fn poly(&self, name: &str) -> Option<&MultiPoly> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn point(&self, name: &str) -> Option<&ProjPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }
}

fn perr(line: usize, msg: impl Into<String>) -> PolyError {
    PolyError::Parse { line, msg: msg.into() }
}

struct Header {
    field: Field,
    vars: Vec<String>,
    weights: Vec<u32>,
}

fn parse_header(line: usize, text: &str) -> Result<Header, PolyError> {
    let mut field = None;
    let mut vars = None;
    let mut weights = None;
    for part in text.split(';') {
        let (key, value) = part.split_once(':').ok_or_else(|| perr(line, format!("malformed header item `{part}`")))?;
        let value = value.trim();
        match key.trim() {
            "vars" => vars = Some(value.split_whitespace().map(String::from).collect::<Vec<_>>()),
            "weights" => {
                let w: Result<Vec<u32>, _> = value.split_whitespace().map(str::parse).collect();
                weights = Some(w.map_err(|_| perr(line, "weights must be positive integers"))?);
            }
            "field" => field = Some(parse_field_equation(value).map_err(|e| perr(line, e.to_string()))?),
            other => return Err(perr(line, format!("unknown header key `{other}`"))),
        }
    }
    let vars = vars.ok_or_else(|| perr(line, "header lacks `vars`"))?;
    let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
    if weights.len() != vars.len() || weights.contains(&0) {
        return Err(perr(line, "weights do not match vars"));
    }
    let field = field.ok_or_else(|| perr(line, "header lacks `field`"))?;
    Ok(Header { field, vars, weights })
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses a polynomial expression in the given variables.
pub fn parse_poly(text: &str, field: &Field, vars: &[&str]) -> Result<MultiPoly, PolyError> {
    parse_expr(0, text, field, vars)
}

fn parse_expr(line: usize, text: &str, field: &Field, vars: &[&str]) -> Result<MultiPoly, PolyError> {
    let n = vars.len();
    let mut out = MultiPoly::zero(field, n);
    let text = text.trim();
    if text == "0" {
        return Ok(out);
    }
    for term in split_top(text, '+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(perr(line, "empty term"));
        }
        let mut coeff = 1u64;
        let mut exps = vec![0u32; n];
        for factor in split_top(term, '*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) if vars.contains(&b.trim()) => {
                    (b.trim(), e.trim().parse::<u32>().map_err(|_| perr(line, format!("bad exponent in `{factor}`")))?)
                }
                _ => (factor, 1),
            };
            if let Some(i) = vars.iter().position(|v| *v == base) {
                exps[i] += exp;
            } else {
                let inner = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')).unwrap_or(factor);
                let c = field.parse_elem(inner).map_err(|e| perr(line, e.to_string()))?;
                coeff = field.mul(coeff, c.bits());
            }
        }
        out.add_term(Monomial(exps), coeff);
    }
    Ok(out)
}

fn parse_point(line: usize, text: &str, header: &Header) -> Result<ProjPoint, PolyError> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| perr(line, "point must be parenthesized"))?;
    let coords: Result<Vec<u64>, PolyError> = inner
        .split(':')
        .map(|c| header.field.parse_elem(c).map(|e| e.bits()).map_err(|e| perr(line, e.to_string())))
        .collect();
    let coords = coords?;
    // Points of the base plane may omit trailing weighted coordinates.
    let weights: Vec<u32> = if coords.len() == header.weights.len() {
        header.weights.clone()
    } else {
        header.weights.iter().copied().filter(|&w| w == 1).collect()
    };
    if coords.len() != weights.len() {
        return Err(perr(line, format!("point has {} coordinates", coords.len())));
    }
    ProjPoint::weighted(&header.field, &coords, &weights).map_err(|e| perr(line, e.to_string()))
}

/// Parses a data file: one header line, then `name = polynomial` or
/// `name = (a : b : c)` entries.
pub fn parse_poly_file(text: &str) -> Result<PolyFile, PolyError> {
    let mut header: Option<Header> = None;
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(lineno, line)?);
            continue;
        }
        let continued = line.starts_with(char::is_whitespace) || line.trim_start().starts_with('+');
        if continued {
            let last = entries.last_mut().ok_or_else(|| perr(lineno, "continuation before any entry"))?;
            last.2.push(' ');
            last.2.push_str(line.trim());
            continue;
        }
        let (name, body) = line.split_once('=').ok_or_else(|| perr(lineno, "expected `name = value`"))?;
        let name = name.trim();
        if name.is_empty() || entries.iter().any(|(_, n, _)| n == name) {
            return Err(perr(lineno, format!("missing or duplicate name `{name}`")));
        }
        entries.push((lineno, name.to_string(), body.trim().to_string()));
    }
    let header = header.ok_or_else(|| perr(0, "missing header line"))?;
    let var_refs: Vec<&str> = header.vars.iter().map(String::as_str).collect();
    let mut polys = Vec::new();
    let mut points = Vec::new();
    for (lineno, name, body) in entries {
        if body.starts_with('(') && body.contains(':') {
            points.push((name, parse_point(lineno, &body, &header)?));
        } else {
            polys.push((name, parse_expr(lineno, &body, &header.field, &var_refs)?));
        }
    }
    Ok(PolyFile { field: header.field, vars: header.vars, weights: header.weights, polys, points })
}

/// Canonical rendering, parseable by [`parse_poly_file`].
pub fn format_poly_file(file: &PolyFile) -> String {
    let mut out = format!(
        "vars: {}; weights: {}; field: {}\n",
        file.vars.join(" "),
        file.weights.iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
        file.field.header_equation()
    );
    let names = file.var_refs();
    for (name, p) in &file.polys {
        out.push_str(&format!("{name} = {}\n", p.format_with(&names)));
    }
    for (name, p) in &file.points {
        out.push_str(&format!("{name} = {p}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# sample\nvars: x y z; weights: 1 1 1; field: g^5=g^2+1\n\
        a = g^3*x^2*y + z^3\n  + g^-1*x*y*z\nb = 0\np = (g^2 : 0 : g)\n";

    #[test]
    fn parses_sample() {
        let file = parse_poly_file(SAMPLE).unwrap();
        let f = &file.field;
        let a = file.poly("a").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.coeff_of(&[1, 1, 1]), f.gen_pow(30));
        assert!(file.poly("b").unwrap().is_zero());
        let p = file.point("p").unwrap();
        assert_eq!(p.raw(), &[f.gen_pow(1).bits(), 0, 1]);
    }

    #[test]
    fn round_trip() {
        let file = parse_poly_file(SAMPLE).unwrap();
        let again = parse_poly_file(&format_poly_file(&file)).unwrap();
        assert_eq!(again.polys, file.polys);
        assert_eq!(again.points, file.points);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_poly_file("vars: x; field: g^5=g^2+1\na = x^\n").unwrap_err();
        assert_eq!(err, PolyError::Parse { line: 2, msg: "bad exponent in `x^`".into() });
    }
}
