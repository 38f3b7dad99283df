//! Dense linear algebra over GF(2).

use crate::bits::BitVec;

/// Row-major bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Row-reduced form of a set of vectors, remembering which original
/// rows produced each reduced row so that solutions can be mapped back.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    n_orig: usize,
    /// (pivot column, reduced row, combination of original rows)
    pivots: Vec<(usize, BitVec, BitVec)>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length must equal column count");
        }
        BitMatrix { cols, rows }
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self.cols, &self.rows)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// M·x over GF(2), one bit per row.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols);
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>())
    }

    /// Basis of {x : M·x = 0}.
    pub fn nullspace(&self) -> Vec<BitVec> {
        // Fully reduce so that each pivot column appears in exactly one row.
        let mut rows: Vec<BitVec> = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVec::zeros(self.cols);
                x.set(free, true);
                for (i, &pc) in pivot_cols.iter().enumerate() {
                    if rows[i].get(free) {
                        x.set(pc, true);
                    }
                }
                x
            })
            .collect()
    }
}

impl Echelon {
    pub fn new(cols: usize, rows: &[BitVec]) -> Self {
        let mut e = Echelon {
            cols,
            n_orig: rows.len(),
            pivots: Vec::new(),
        };
        for (i, row) in rows.iter().enumerate() {
            let mut combo = BitVec::zeros(rows.len());
            combo.set(i, true);
            e.insert(row.clone(), combo);
        }
        e
    }

    fn insert(&mut self, mut row: BitVec, mut combo: BitVec) {
        for (pc, prow, pcombo) in &self.pivots {
            if row.get(*pc) {
                row.xor_assign(prow);
                combo.xor_assign(pcombo);
            }
        }
        if let Some(pc) = row.first_one() {
            // keep earlier pivots reduced against the new one
            for (_, prow, pcombo) in self.pivots.iter_mut() {
                if prow.get(pc) {
                    prow.xor_assign(&row);
                    pcombo.xor_assign(&combo);
                }
            }
            self.pivots.push((pc, row, combo));
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the row space; returns the residue and the
    /// combination of original rows that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.cols);
        let mut residue = v.clone();
        let mut combo = BitVec::zeros(self.n_orig);
        for (pc, prow, pcombo) in &self.pivots {
            if residue.get(*pc) {
                residue.xor_assign(prow);
                combo.xor_assign(pcombo);
            }
        }
        (residue, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Some combination of original rows summing to `v`, if one exists.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        let (residue, combo) = self.reduce(v);
        residue.is_zero().then_some(combo)
    }
}
