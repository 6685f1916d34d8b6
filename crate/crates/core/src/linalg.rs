//! Sparse incremental row echelon forms over `F_p`.
//!
//! Vectors are sparse maps from column index to a nonzero residue. Every
//! inserted vector carries a tag; the echelon tracks which combination of
//! tagged inputs produced each pivot row, so the same structure yields
//! ranks, kernels, preimages and canonical reductions modulo a span.

use std::collections::BTreeMap;

pub type SparseVec = BTreeMap<u64, u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        Fp { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64 % self.p as u64) % self.p as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_p");
        let mut acc = 1u64;
        let mut b = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }
}

/// `v += c·w` over `F_p`, dropping zeros.
pub fn axpy(f: Fp, v: &mut SparseVec, c: u32, w: &SparseVec) {
    if c == 0 {
        return;
    }
    for (&k, &x) in w {
        let e = v.entry(k).or_insert(0);
        *e = f.add(*e, f.mul(c, x));
        if *e == 0 {
            v.remove(&k);
        }
    }
}

pub fn scale(f: Fp, v: &SparseVec, c: u32) -> SparseVec {
    if c == 0 {
        return SparseVec::new();
    }
    v.iter().map(|(&k, &x)| (k, f.mul(c, x))).collect()
}

#[derive(Clone, Debug)]
struct PivotRow {
    row: SparseVec,
    combo: SparseVec,
}

/// Outcome of inserting a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent; it now owns this pivot column.
    Pivot(u64),
    /// The vector was dependent: this combination of tags sums to zero.
    Dependent(SparseVec),
}

#[derive(Clone, Debug)]
pub struct Echelon {
    f: Fp,
    pivots: BTreeMap<u64, PivotRow>,
}

impl Echelon {
    pub fn new(p: u32) -> Self {
        Echelon { f: Fp::new(p), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn field(&self) -> Fp {
        self.f
    }

    /// Reduces `v` so that it has no entry in a pivot column, returning the
    /// combination of tags subtracted (`v_out = v_in - Σ combo_k · input_k`).
    pub fn reduce(&self, v: &mut SparseVec) -> SparseVec {
        let f = self.f;
        let mut used = SparseVec::new();
        let mut cursor = 0u64;
        loop {
            let next = v.range(cursor..).find(|(k, _)| self.pivots.contains_key(k)).map(|(k, x)| (*k, *x));
            let Some((col, x)) = next else { break };
            let piv = &self.pivots[&col];
            let c = f.neg(x);
            axpy(f, v, c, &piv.row);
            axpy(f, &mut used, f.neg(c), &piv.combo);
            cursor = col + 1;
        }
        used
    }

    /// Inserts a vector tagged `tag`.
    pub fn insert(&mut self, mut v: SparseVec, tag: u64) -> Insert {
        let f = self.f;
        let used = self.reduce(&mut v);
        let mut combo = scale(f, &used, f.neg(1));
        let e = combo.entry(tag).or_insert(0);
        *e = f.add(*e, 1);
        if *e == 0 {
            combo.remove(&tag);
        }
        match v.iter().next().map(|(k, x)| (*k, *x)) {
            None => Insert::Dependent(combo),
            Some((col, lead)) => {
                let inv = f.inv(lead);
                let row = scale(f, &v, inv);
                let combo = scale(f, &combo, inv);
                self.pivots.insert(col, PivotRow { row, combo });
                Insert::Pivot(col)
            }
        }
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduced(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        self.reduce(&mut w);
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduced(v).is_empty()
    }

    /// A combination of tagged inputs summing to `v`, when `v` is in the span.
    pub fn preimage(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut w = v.clone();
        let used = self.reduce(&mut w);
        if w.is_empty() {
            Some(used)
        } else {
            None
        }
    }
}

impl Echelon {
    /// The span's reduced row echelon basis, ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let f = self.f;
        let mut done: BTreeMap<u64, SparseVec> = BTreeMap::new();
        for (&col, piv) in self.pivots.iter().rev() {
            let mut row = piv.row.clone();
            let later: Vec<(u64, u32)> =
                row.iter().filter(|(k, _)| **k > col && done.contains_key(k)).map(|(k, x)| (*k, *x)).collect();
            for (k, x) in later {
                axpy(f, &mut row, f.neg(x), &done[&k]);
            }
            done.insert(col, row);
        }
        done.into_values().collect()
    }
}

/// Kernel basis of the linear map sending basis vector `j` to `cols[j]`.
pub fn kernel(p: u32, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(p);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Insert::Dependent(combo) = ech.insert(c.clone(), j as u64) {
            out.push(combo);
        }
    }
    out
}

pub fn rank(p: u32, vecs: &[SparseVec]) -> usize {
    let mut ech = Echelon::new(p);
    for (j, v) in vecs.iter().enumerate() {
        ech.insert(v.clone(), j as u64);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u64, u32)]) -> SparseVec {
        entries.iter().copied().filter(|(_, x)| *x != 0).collect()
    }

    #[test]
    fn kernel_of_small_map() {
        // columns (1,1), (1,1), (0,1) over F_3: kernel spanned by e0 - e1
        let cols = vec![sv(&[(0, 1), (1, 1)]), sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)])];
        let k = kernel(3, &cols);
        assert_eq!(k, vec![sv(&[(0, 2), (1, 1)])]);
        assert_eq!(rank(3, &cols), 2);
    }

    #[test]
    fn preimage_and_reduction() {
        let mut e = Echelon::new(5);
        e.insert(sv(&[(0, 2), (2, 1)]), 0);
        e.insert(sv(&[(1, 3)]), 1);
        let target = sv(&[(0, 4), (1, 3), (2, 2)]);
        let pre = e.preimage(&target).unwrap();
        assert_eq!(pre, sv(&[(0, 2), (1, 1)]));
        assert!(e.preimage(&sv(&[(2, 1)])).is_none());
        assert_eq!(e.reduced(&sv(&[(2, 1)])), sv(&[(2, 1)]));
        assert_eq!(e.reduced(&sv(&[(0, 1)])), sv(&[(2, 2)]));
        assert_eq!(e.rref(), vec![sv(&[(0, 1), (2, 3)]), sv(&[(1, 1)])]);
    }

    #[test]
    fn field_ops() {
        let f = Fp::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.sub(2, 5), 4);
    }
}
