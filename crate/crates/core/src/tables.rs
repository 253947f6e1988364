//! Tab-separated tables of `M(l, n)` and of the floor-bound equality region.

use serde::{Deserialize, Serialize};

use crate::bound::{deficiency, equality_region, floor_bound, m_bruteforce, m_closed_form};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MTable {
    pub lmax: u64,
    pub nmax: u64,
    /// `values[l - 1][n - 1] = M(l, n)`.
    pub values: Vec<Vec<u128>>,
    /// Cells `(l, n, closed form, brute force)` where the two disagree.
    pub mismatches: Vec<(u64, u64, u128, u128)>,
    pub checked: bool,
}

impl MTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("l\\n");
        for n in 1..=self.nmax {
            out.push_str(&format!("\t{n}"));
        }
        out.push('\n');
        for (i, row) in self.values.iter().enumerate() {
            out.push_str(&(i + 1).to_string());
            for v in row {
                out.push_str(&format!("\t{v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn check_limits(lmax: u64, nmax: u64) -> Result<()> {
    if lmax == 0 || nmax == 0 {
        return Err(Error::OutOfRange("table bounds must be at least 1".into()));
    }
    Ok(())
}

/// `M(l, n)` for `1 <= l <= lmax`, `1 <= n <= nmax`; with `check`, every cell
/// is also brute-forced.
pub fn mtable(lmax: u64, nmax: u64, check: bool) -> Result<MTable> {
    check_limits(lmax, nmax)?;
    let mut values = Vec::new();
    let mut mismatches = Vec::new();
    for l in 1..=lmax {
        let mut row = Vec::new();
        for n in 1..=nmax {
            let v = m_closed_form(l, n)?;
            if check {
                let b = m_bruteforce(l, n)?.value;
                if b != v {
                    mismatches.push((l, n, v, b));
                }
            }
            row.push(v);
        }
        values.push(row);
    }
    Ok(MTable {
        lmax,
        nmax,
        values,
        mismatches,
        checked: check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRow {
    pub l: u64,
    pub n: u64,
    pub r: u64,
    pub deficiency: String,
    pub m: u128,
    pub floor: u128,
    pub predicted_equal: bool,
    pub equal: bool,
}

impl RegionRow {
    pub fn agrees(&self) -> bool {
        self.predicted_equal == self.equal
    }
}

/// One row per `(l, n)` with `l <= n`: the residue `r`, `D(r, l)`, the
/// region predicate and the direct comparison of `M(l, n)` with the floor
/// bound.
pub fn region(lmax: u64, nmax: u64) -> Result<Vec<RegionRow>> {
    check_limits(lmax, nmax)?;
    let mut rows = Vec::new();
    for l in 1..=lmax {
        for n in l..=nmax {
            let r = n % l;
            let m = m_closed_form(l, n)?;
            let floor = floor_bound(l, n)?;
            rows.push(RegionRow {
                l,
                n,
                r,
                deficiency: deficiency(r, l)?.to_string(),
                m,
                floor,
                predicted_equal: equality_region(l, n)?,
                equal: m == floor,
            });
        }
    }
    Ok(rows)
}

pub fn region_tsv(rows: &[RegionRow]) -> String {
    let mut out = String::from("l\tn\tr\tD\tM\tfloor\tpredicted\tdirect\tagree\n");
    let word = |b: bool| if b { "equality" } else { "strict" };
    for row in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            row.l,
            row.n,
            row.r,
            row.deficiency,
            row.m,
            row.floor,
            word(row.predicted_equal),
            word(row.equal),
            if row.agrees() { "yes" } else { "NO" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_row_and_diagonal() {
        let t = mtable(8, 8, true).unwrap();
        assert!(t.mismatches.is_empty());
        assert_eq!(t.values[1][..6], [1, 2, 3, 5, 7, 10]);
        for n in 1..=8u64 {
            let diag = t.values[n as usize - 1][n as usize - 1];
            assert_eq!(diag, (n * n - n) as u128 / 2 + 1);
            for l in n + 1..=8 {
                assert_eq!(t.values[l as usize - 1][n as usize - 1], diag);
            }
        }
        let tsv = t.to_tsv();
        assert!(tsv.starts_with("l\\n\t1\t2"));
        assert!(tsv.lines().nth(2).unwrap().starts_with("2\t1\t2\t3\t5\t7\t10"));
    }

    #[test]
    fn region_rows() {
        let rows = region(12, 12).unwrap();
        assert!(rows.iter().all(RegionRow::agrees));
        let at = |l, n| rows.iter().find(|r| r.l == l && r.n == n).unwrap();
        assert!(at(8, 11).equal && at(8, 11).predicted_equal);
        assert!(!at(8, 12).equal);
        assert_eq!(at(8, 12).deficiency, "1");
        assert!(rows.iter().filter(|r| r.l <= 7).all(|r| r.equal));
        assert!(region_tsv(&rows).lines().count() == rows.len() + 1);
    }

    #[test]
    fn brute_force_limit_is_an_error() {
        assert!(matches!(mtable(30, 30, true), Err(Error::TooLarge { .. })));
        assert!(mtable(30, 30, false).is_ok());
    }
}
