use num_traits::Zero;

use super::family::{family_polynomial, labels_up_to, Family};
use crate::error::Result;
use crate::symmetry::Label;
use crate::Rational;

/// Coefficients of a block of family members, one row per label and one
/// column per monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub family: Family,
    /// Exponent vectors, by ascending degree and then descending exponents.
    pub columns: Vec<Vec<u32>>,
    pub rows: Vec<(Label, Vec<Rational>)>,
}

fn column_order(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

fn monomial_name(alpha: &[u32]) -> String {
    let parts: Vec<String> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("X{}", i + 1)
            } else {
                format!("X{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CoefficientTable {
    fn build(family: Family, labels: Vec<Label>) -> Result<Self> {
        let polys = labels
            .iter()
            .map(|k| family_polynomial(family, k))
            .collect::<Result<Vec<_>>>()?;
        let mut columns: Vec<Vec<u32>> = polys
            .iter()
            .flat_map(|p| p.terms().map(|(a, _)| a.clone()).collect::<Vec<_>>())
            .collect();
        columns.sort_by(|a, b| column_order(a, b));
        columns.dedup();
        let rows = labels
            .into_iter()
            .zip(&polys)
            .map(|(k, p)| {
                let values = columns.iter().map(|a| p.coefficient(a)).collect();
                (k, values)
            })
            .collect();
        Ok(CoefficientTable {
            family,
            columns,
            rows,
        })
    }

    /// CSV with a header of monomials; cells after a row's last nonzero
    /// entry are left blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("P");
        for c in &self.columns {
            out.push(',');
            out.push_str(&monomial_name(c));
        }
        out.push('\n');
        for (k, values) in &self.rows {
            let comps: Vec<String> = k
                .integer_components()
                .unwrap_or_default()
                .iter()
                .map(|v| v.to_string())
                .collect();
            out.push_str(&format!("\"P{}_({})\"", self.family, comps.join(",")));
            let last = values.iter().rposition(|v| !v.is_zero());
            for (i, v) in values.iter().enumerate() {
                out.push(',');
                if last.is_some_and(|l| i <= l) {
                    out.push_str(&format_rational(v));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Tables of all members with `k₁ ≤ max_first`, rows in ascending
/// lexicographic order. Members of the first-kind families only involve
/// monomials of the parity of `k₁ + … + kₙ`, so those families are split
/// into an even and an odd block.
pub fn coefficient_tables(family: Family, n: usize, max_first: usize) -> Result<Vec<CoefficientTable>> {
    let mut labels = labels_up_to(n, max_first);
    labels.reverse();
    match family {
        Family::IPlus | Family::IMinus => {
            let (even, odd): (Vec<Label>, Vec<Label>) = labels.into_iter().partition(|k| {
                k.integer_components()
                    .is_some_and(|c| c.iter().sum::<i64>() % 2 == 0)
            });
            Ok(vec![
                CoefficientTable::build(family, even)?,
                CoefficientTable::build(family, odd)?,
            ])
        }
        Family::IIIPlus | Family::IIIMinus => Ok(vec![CoefficientTable::build(family, labels)?]),
    }
}
