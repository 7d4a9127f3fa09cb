//! Coefficient lists on the command line.
//!
//! Coefficients are ascending-degree and comma separated. Over F_p an entry
//! is an integer reduced mod p; over F_{p^e} an entry may also be a bracketed
//! coordinate list in the power basis, `[1,2]` = 1 + 2a.

use fqrace::algebra::{FieldCtx, FqElem, PolyFq};

fn split_top_level(s: &str) -> Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced ']' in {s:?}"));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced '[' in {s:?}"));
    }
    out.push(&s[start..]);
    Ok(out)
}

pub fn parse_element(field: &FieldCtx, token: &str) -> Result<FqElem, String> {
    let t = token.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| format!("invalid coordinate {c:?} in {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        return field.from_coords(&coords).map_err(|e| e.to_string());
    }
    t.parse::<i64>().map(|n| field.from_int(n)).map_err(|_| format!("invalid coefficient {t:?}"))
}

pub fn parse_coeffs(field: &FieldCtx, s: &str) -> Result<Vec<FqElem>, String> {
    if s.trim().is_empty() {
        return Err("empty coefficient list".into());
    }
    split_top_level(s)?.into_iter().map(|t| parse_element(field, t)).collect()
}

pub fn parse_poly(field: &FieldCtx, s: &str) -> Result<PolyFq, String> {
    Ok(PolyFq::new(parse_coeffs(field, s)?))
}

/// The inverse of [`parse_element`]: an integer over F_p, coordinates otherwise.
pub fn format_element(field: &FieldCtx, a: FqElem) -> String {
    if field.e() == 1 {
        return a.index().to_string();
    }
    let c: Vec<String> = a.coords(field).iter().map(|c| c.to_string()).collect();
    format!("[{}]", c.join(","))
}

pub fn format_poly(field: &FieldCtx, f: &PolyFq) -> String {
    f.coeffs().iter().map(|&c| format_element(field, c)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field() {
        let k = FieldCtx::new(23, 1).unwrap();
        let f = parse_coeffs(&k, "5,0,0,2,0,0,1").unwrap();
        assert_eq!(f.len(), 7);
        assert_eq!(parse_element(&k, "-1").unwrap(), FqElem(22));
    }

    #[test]
    fn extension_field() {
        let k = FieldCtx::new(3, 2).unwrap();
        let f = parse_coeffs(&k, "[1,2],0, 2 ,[0,1]").unwrap();
        assert_eq!(f, vec![FqElem(7), FqElem(0), FqElem(2), FqElem(3)]);
        let p = PolyFq::new(f);
        assert_eq!(parse_poly(&k, &format_poly(&k, &p)).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        let k = FieldCtx::new(3, 2).unwrap();
        assert!(parse_coeffs(&k, "1,x").is_err());
        assert!(parse_coeffs(&k, "[1,2").is_err());
        assert!(parse_coeffs(&k, "[1,2,0]").is_err());
        assert!(parse_coeffs(&k, "").is_err());
    }
}
