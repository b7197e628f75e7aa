use super::Matrix;
use crate::error::{Error, Result};
use crate::field_poly::PrimeField;

/// Reads consecutive matrices, each a `p r` line followed by `r` rows.
pub fn parse_matrices(text: &str) -> Result<Vec<Matrix<PrimeField>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let ints = |ln: usize, l: &str| -> Result<Vec<i64>> {
        l.split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })
    };
    let mut out = Vec::new();
    while let Some((ln, header)) = lines.next() {
        let h = ints(ln, header)?;
        if h.len() != 2 || h[0] < 2 || h[1] < 0 {
            return Err(Error::Parse {
                line: ln,
                msg: "expected `p r`".into(),
            });
        }
        let field = PrimeField::new(h[0] as u64)?;
        let r = h[1] as usize;
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (ln, l) = lines.next().ok_or(Error::Parse {
                line: ln,
                msg: format!("expected {r} rows"),
            })?;
            let row = ints(ln, l)?;
            if row.len() != r {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected {r} entries"),
                });
            }
            rows.push(row);
        }
        out.push(Matrix::from_ints(&field, &rows)?);
    }
    Ok(out)
}

pub fn matrix_to_text(m: &Matrix<PrimeField>) -> String {
    let mut s = format!("{} {}\n", m.field().p(), m.dim());
    for row in m.to_ints() {
        let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&r.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "3 2\n0 2\n1 0\n2 1\n1\n";
        let ms = parse_matrices(text).unwrap();
        assert_eq!(ms.len(), 2);
        let again: String = ms.iter().map(matrix_to_text).collect();
        assert_eq!(parse_matrices(&again).unwrap(), ms);
        assert!(parse_matrices("3 2\n0 2\n").is_err());
        assert!(parse_matrices("4 1\n1\n").is_err());
    }
}
