//! JSON series and measure files, and the point / list syntax of the command line.

use bergman_core::geometry::{Atom, DiscreteMeasure};
use bergman_core::{BallPoint, MultiIndex, TaylorPolynomial, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
struct RawFile {
    n: usize,
    degree: Option<u32>,
    terms: Option<Vec<Value>>,
    atoms: Option<Vec<Value>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Term {
    m: Vec<u32>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Deserialize)]
struct RawAtom {
    z: Vec<[f64; 2]>,
    mass: f64,
}

/// Parses `{"n", "degree", "terms": [{"m", "re", "im"}]}`.
pub fn parse_series(text: &str) -> CliResult<TaylorPolynomial> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::parse(format!("series file: {e}")))?;
    let degree = raw.degree.ok_or_else(|| CliError::parse("series file: missing field `degree`"))?;
    let terms = raw.terms.ok_or_else(|| CliError::parse("series file: missing field `terms`"))?;
    if raw.n == 0 {
        return Err(CliError::parse("series file: n must be at least 1"));
    }
    let mut f = TaylorPolynomial::zero(raw.n, degree);
    for (i, v) in terms.into_iter().enumerate() {
        let t: Term = serde_json::from_value(v).map_err(|e| CliError::parse(format!("term {i}: {e}")))?;
        if t.m.len() != raw.n {
            return Err(CliError::parse(format!(
                "term {i}: multi-index has {} entries, expected {}",
                t.m.len(),
                raw.n
            )));
        }
        let m = MultiIndex::new(t.m);
        if m.order() > degree {
            return Err(CliError::parse(format!("term {i}: order {} exceeds degree {degree}", m.order())));
        }
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(CliError::parse(format!("term {i}: coefficient is not finite")));
        }
        f.add_term(m, C64::new(t.re, t.im)).map_err(|e| CliError::parse(format!("term {i}: {e}")))?;
    }
    Ok(f)
}

pub fn series_to_json(f: &TaylorPolynomial) -> String {
    let terms: Vec<Term> = f.terms().map(|(m, c)| Term { m: m.components().to_vec(), re: c.re, im: c.im }).collect();
    serde_json::json!({ "n": f.dim(), "degree": f.degree(), "terms": terms }).to_string()
}

/// Parses `{"n", "atoms": [{"z": [[re, im], …], "mass"}]}`.
pub fn parse_measure(text: &str) -> CliResult<DiscreteMeasure> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| CliError::parse(format!("measure file: {e}")))?;
    let atoms = raw.atoms.ok_or_else(|| CliError::parse("measure file: missing field `atoms`"))?;
    if raw.n == 0 {
        return Err(CliError::parse("measure file: n must be at least 1"));
    }
    let mut out = Vec::with_capacity(atoms.len());
    for (i, v) in atoms.into_iter().enumerate() {
        let a: RawAtom = serde_json::from_value(v).map_err(|e| CliError::parse(format!("atom {i}: {e}")))?;
        if a.z.len() != raw.n {
            return Err(CliError::parse(format!("atom {i}: point has {} coordinates, expected {}", a.z.len(), raw.n)));
        }
        if !(a.mass > 0.0 && a.mass.is_finite()) {
            return Err(CliError::parse(format!("atom {i}: mass must be positive")));
        }
        let z = BallPoint::new(a.z.iter().map(|c| C64::new(c[0], c[1])).collect())
            .map_err(|e| CliError::parse(format!("atom {i}: {e}")))?;
        out.push(Atom { z, mass: a.mass });
    }
    Ok(DiscreteMeasure::new(raw.n, out)?)
}

/// `re,im;re,im;…` (an omitted imaginary part is zero).
pub fn parse_coords(s: &str) -> CliResult<Vec<C64>> {
    s.split(';')
        .map(|c| {
            let parts: Vec<&str> = c.split(',').map(str::trim).collect();
            let num =
                |t: &str| t.parse::<f64>().map_err(|_| CliError::parse(format!("bad number `{t}` in point `{s}`")));
            match parts.as_slice() {
                [re] => Ok(C64::new(num(re)?, 0.0)),
                [re, im] => Ok(C64::new(num(re)?, num(im)?)),
                _ => Err(CliError::parse(format!("bad coordinate `{c}` in point `{s}`"))),
            }
        })
        .collect()
}

pub fn parse_point(s: &str) -> CliResult<BallPoint> {
    Ok(BallPoint::new(parse_coords(s)?)?)
}

/// `p,alpha;p,alpha;…`
pub fn parse_pairs(s: &str) -> CliResult<Vec<(f64, f64)>> {
    s.split(';')
        .map(|c| match parse_list(c)?.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(CliError::parse(format!("expected `p,alpha` in `{s}`, got `{c}`"))),
        })
        .collect()
}

/// Comma-separated reals.
pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::parse(format!("bad number `{t}` in list `{s}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_roundtrip() {
        let text =
            r#"{"n": 2, "degree": 3, "terms": [{"m": [1, 2], "re": 1.5, "im": -0.5}, {"m": [0, 0], "re": 2.0}]}"#;
        let f = parse_series(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(parse_series(&series_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn series_errors_name_the_term() {
        let bad = r#"{"n": 1, "degree": 2, "terms": [{"m": [1], "re": 1.0}, {"m": [1], "im": 1.0}]}"#;
        let e = parse_series(bad).unwrap_err().to_string();
        assert!(e.contains("term 1"), "{e}");
        let deg = r#"{"n": 1, "degree": 2, "terms": [{"m": [3], "re": 1.0}]}"#;
        assert!(parse_series(deg).unwrap_err().to_string().contains("term 0"));
        let arity = r#"{"n": 2, "degree": 2, "terms": [{"m": [1], "re": 1.0}]}"#;
        assert_eq!(parse_series(arity).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn measures() {
        let text = r#"{"n": 1, "atoms": [{"z": [[0.9, 0.0]], "mass": 1.0}, {"z": [[-0.5, 0.1]], "mass": 2.0}]}"#;
        let mu = parse_measure(text).unwrap();
        assert_eq!(mu.total_mass(), 3.0);
        let bad = r#"{"n": 1, "atoms": [{"z": [[1.2, 0.0]], "mass": 1.0}]}"#;
        assert!(parse_measure(bad).unwrap_err().to_string().contains("atom 0"));
    }

    #[test]
    fn points_and_lists() {
        assert_eq!(parse_coords("0.5,0.1;0.2").unwrap(), vec![C64::new(0.5, 0.1), C64::new(0.2, 0.0)]);
        assert!(parse_coords("0.5,x").is_err());
        assert_eq!(parse_list("0.9, 0.99").unwrap(), vec![0.9, 0.99]);
        assert_eq!(parse_pairs("1,0;2,-0.5").unwrap(), vec![(1.0, 0.0), (2.0, -0.5)]);
        assert!(parse_pairs("1,0,3").is_err());
        assert_eq!(parse_point("0.9,0.9").unwrap_err().exit_code(), 3);
    }
}
