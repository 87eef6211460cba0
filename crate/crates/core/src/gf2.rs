//! Gaussian elimination over GF(2) on packed rows.

use crate::bits::BitString;

/// Which set bit of a row becomes its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotSide {
    /// Leftmost set bit (lowest index).
    First,
    /// Rightmost set bit (highest index).
    Last,
}

impl PivotSide {
    fn pivot_of(self, v: &BitString) -> Option<usize> {
        match self {
            PivotSide::First => v.first_one(),
            PivotSide::Last => v.ones_iter().last(),
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    bits: BitString,
    pivot: usize,
    /// Which inserted items XOR to `bits`.
    combo: BitString,
}

/// Incremental row echelon basis that remembers, for every stored row,
/// which of the inserted vectors it is a combination of.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    capacity: usize,
    inserted: usize,
    rows: Vec<Row>,
}

/// Outcome of [`EchelonBasis::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    Independent,
    /// The vector equals the XOR of these earlier inserted items
    /// (0-based insertion indices).
    Dependent(Vec<usize>),
}

impl EchelonBasis {
    /// `capacity` bounds the number of vectors that may be inserted.
    pub fn new(width: usize, capacity: usize) -> Self {
        Self {
            width,
            capacity,
            inserted: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Pivot columns of the stored rows, in insertion order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// combination of inserted items that was XORed in.
    pub fn reduce(&self, v: &BitString) -> (BitString, BitString) {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut residual = v.clone();
        let mut combo = BitString::zeros(self.capacity);
        // Each row is zero on the pivots of the rows stored before it, so a
        // single pass in insertion order clears every pivot.
        for row in &self.rows {
            if residual.get(row.pivot) {
                residual.xor_assign(&row.bits);
                combo.xor_assign(&row.combo);
            }
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &BitString) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert(&mut self, v: &BitString) -> Insertion {
        assert!(self.inserted < self.capacity, "echelon basis capacity exceeded");
        let index = self.inserted;
        self.inserted += 1;
        let (residual, mut combo) = self.reduce(v);
        match residual.first_one() {
            None => Insertion::Dependent(combo.ones_iter().collect()),
            Some(pivot) => {
                combo.flip(index);
                self.rows.push(Row {
                    bits: residual,
                    pivot,
                    combo,
                });
                Insertion::Independent
            }
        }
    }
}

pub fn rank(rows: &[BitString]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut basis = EchelonBasis::new(first.len(), rows.len());
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Reduced row echelon form. Each returned row is paired with its pivot
/// column; every other returned row is zero in that column. Rows are sorted
/// by pivot ascending. Zero rows are dropped.
pub fn rref(rows: &[BitString], side: PivotSide) -> Vec<(usize, BitString)> {
    let mut out: Vec<(usize, BitString)> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (p, b) in &out {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
        let Some(p) = side.pivot_of(&v) else {
            continue;
        };
        for (_, b) in out.iter_mut() {
            if b.get(p) {
                b.xor_assign(&v);
            }
        }
        out.push((p, v));
    }
    out.sort_by_key(|(p, _)| *p);
    out
}

/// A basis of `{ v : c·v = 0 for every constraint row c }`.
pub fn nullspace(constraints: &[BitString], width: usize) -> Vec<BitString> {
    let reduced = rref(constraints, PivotSide::First);
    let mut is_pivot = vec![false; width];
    for (p, _) in &reduced {
        is_pivot[*p] = true;
    }
    (0..width)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitString::zeros(width);
            v.set(f, true);
            for (p, row) in &reduced {
                if row.get(f) {
                    v.set(*p, true);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        BitString::from_binary(s).unwrap()
    }

    #[test]
    fn dependency_witness_names_the_combination() {
        let mut basis = EchelonBasis::new(4, 4);
        assert_eq!(basis.insert(&b("1100")), Insertion::Independent);
        assert_eq!(basis.insert(&b("0110")), Insertion::Independent);
        assert_eq!(basis.insert(&b("0001")), Insertion::Independent);
        assert_eq!(basis.insert(&b("1011")), Insertion::Dependent(vec![0, 1, 2]));
        assert_eq!(basis.rank(), 3);
    }

    #[test]
    fn rank_of_zero_and_repeated_rows() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[b("000"), b("000")]), 0);
        assert_eq!(rank(&[b("101"), b("101"), b("011")]), 2);
    }

    #[test]
    fn rref_last_pivot_rows_are_bounded_by_their_pivot() {
        let rows = vec![b("11111111"), b("10100101")];
        let reduced = rref(&rows, PivotSide::Last);
        assert_eq!(reduced.len(), 2);
        for (p, row) in &reduced {
            assert_eq!(row.ones_iter().last(), Some(*p));
            for (q, other) in &reduced {
                if q != p {
                    assert!(!other.get(*p));
                }
            }
        }
    }

    #[test]
    fn nullspace_brute_force() {
        let constraints = vec![b("110100"), b("011010"), b("000111")];
        let basis = nullspace(&constraints, 6);
        assert_eq!(basis.len(), 6 - rank(&constraints));
        assert_eq!(rank(&basis), basis.len());
        let mut count = 0;
        for m in 0u64..64 {
            let v = BitString::from_u64_msb_first(m, 6);
            if constraints.iter().all(|c| !c.dot(&v)) {
                count += 1;
            }
        }
        assert_eq!(count, 1 << basis.len());
        for v in &basis {
            assert!(constraints.iter().all(|c| !c.dot(v)));
        }
    }
}
