//! Human-readable rendering of exact values and matrices.
//!
//! Real numbers of the form `q * sqrt(n)` with squarefree `n <= 12` print in
//! surd notation (`2/sqrt(6)`, `sqrt(2)/3`, `1/(2*sqrt(3))`); anything else
//! prints as its term list (`z3`, `-z8^3 + z8`).

use num_traits::{One, Signed};

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::matrix::CycMatrix;

const RADICANDS: [u64; 7] = [2, 3, 5, 6, 7, 10, 11];

fn rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `x` as `q * sqrt(n)` for one of the tabulated radicands.
fn as_surd(x: &Cyclotomic) -> Option<(Rational, u64)> {
    if !x.is_real() {
        return None;
    }
    RADICANDS.iter().find_map(|&n| {
        let r = Cyclotomic::sqrt_int(n);
        let q = x.checked_div(&r).ok()?.to_rational()?;
        Some((q, n))
    })
}

pub fn render(x: &Cyclotomic) -> String {
    if let Some(q) = x.to_rational() {
        return rational(&q);
    }
    let Some((q, n)) = as_surd(x) else {
        return x.to_string();
    };
    let sign = if q.is_negative() { "-" } else { "" };
    let q = q.abs();
    // q sqrt(n) = (q n) / sqrt(n)
    let r = &q * Rational::from_integer(n.into());
    let body = if r.is_integer() {
        format!("{}/sqrt({n})", r.numer())
    } else if r.numer().is_one() {
        format!("1/({}*sqrt({n}))", r.denom())
    } else {
        let num = if q.numer().is_one() {
            format!("sqrt({n})")
        } else {
            format!("{}*sqrt({n})", q.numer())
        };
        if q.denom().is_one() {
            num
        } else {
            format!("{num}/{}", q.denom())
        }
    };
    format!("{sign}{body}")
}

/// Labelled matrix with right-aligned columns.
pub fn render_matrix(m: &CycMatrix) -> String {
    let cells: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(render).collect()).collect();
    let label_w = m.row_labels().iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..m.ncols())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .chain(std::iter::once(m.col_labels()[j].chars().count()))
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    out.push_str(&" ".repeat(label_w));
    for (j, l) in m.col_labels().iter().enumerate() {
        out.push_str(&format!("  {:>w$}", l, w = widths[j]));
    }
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        out.push_str(&format!("{:<w$}", m.row_labels()[i], w = label_w));
        for (j, c) in row.iter().enumerate() {
            out.push_str(&format!("  {:>w$}", c, w = widths[j]));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u64) -> Cyclotomic {
        Cyclotomic::sqrt_int(n)
    }

    #[test]
    fn surds() {
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(render(&Cyclotomic::from_frac(1, 6)), "1/6");
        assert_eq!(render(&Cyclotomic::from_int(-2)), "-2");
        assert_eq!(render(&s(6).inv().unwrap().scale(&Rational::from_integer(2.into()))), "2/sqrt(6)");
        assert_eq!(render(&s(6).inv().unwrap()), "1/sqrt(6)");
        assert_eq!(render(&-s(3).inv().unwrap()), "-1/sqrt(3)");
        assert_eq!(render(&s(2).scale(&third)), "sqrt(2)/3");
        assert_eq!(render(&s(3).scale(&Rational::new(1.into(), 2.into()))), "sqrt(3)/2");
        assert_eq!(render(&s(12).inv().unwrap()), "1/(2*sqrt(3))");
        assert_eq!(render(&s(5).scale(&Rational::new(3.into(), 7.into()))), "3*sqrt(5)/7");
        assert_eq!(render(&Cyclotomic::root_of_unity(3, 1)), "z3");
    }

    #[test]
    fn aligned() {
        let m = CycMatrix::from_rows(vec![
            vec![Cyclotomic::from_frac(1, 6), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::one()],
        ])
        .unwrap();
        let text = render_matrix(&m);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }
}
