//! Dense linear algebra over `F_p`.

fn inv(a: u64, p: u64) -> u64 {
    (0..p - 2).fold(1, |acc, _| acc * a % p)
}

/// Row-reduced span, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Span {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    pub fn new(p: u64) -> Span {
        Span { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; true when it was independent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let s = inv(v[piv], p);
        for a in v.iter_mut() {
            *a = *a * s % p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

pub fn rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut s = Span::new(p);
    for r in rows {
        s.insert(r);
    }
    s.rank()
}
