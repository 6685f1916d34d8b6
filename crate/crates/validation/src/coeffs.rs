/// Coefficient rings, encoded as in the kernel: `a + b·π` is `a + b·p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeffs {
    Field(u64),
    /// `F_p[π]/(π²)`
    Dual(u64),
    /// `Z/p²`
    Zmod(u64),
}

impl Coeffs {
    pub fn p(self) -> u64 {
        match self {
            Coeffs::Field(p) | Coeffs::Dual(p) | Coeffs::Zmod(p) => p,
        }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        match self {
            Coeffs::Field(p) => (a + b) % p,
            Coeffs::Zmod(p) => (a + b) % (p * p),
            Coeffs::Dual(p) => (a % p + b % p) % p + ((a / p + b / p) % p) * p,
        }
    }

    pub fn neg(self, a: u64) -> u64 {
        match self {
            Coeffs::Field(p) => (p - a % p) % p,
            Coeffs::Zmod(p) => (p * p - a % (p * p)) % (p * p),
            Coeffs::Dual(p) => (p - a % p) % p + ((p - a / p) % p) * p,
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        match self {
            Coeffs::Field(p) => a * b % p,
            Coeffs::Zmod(p) => a * b % (p * p),
            Coeffs::Dual(p) => {
                let (a0, a1, b0, b1) = (a % p, a / p, b % p, b / p);
                a0 * b0 % p + ((a0 * b1 + a1 * b0) % p) * p
            }
        }
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        (0..e).fold(1 % self.modulus(), |acc, _| self.mul(acc, a))
    }

    fn modulus(self) -> u64 {
        match self {
            Coeffs::Field(p) => p,
            Coeffs::Dual(p) | Coeffs::Zmod(p) => p * p,
        }
    }

    pub fn int(self, n: i64) -> u64 {
        match self {
            Coeffs::Field(p) | Coeffs::Dual(p) => n.rem_euclid(p as i64) as u64,
            Coeffs::Zmod(p) => n.rem_euclid((p * p) as i64) as u64,
        }
    }

    /// `π` for the dual numbers, `p` for `Z/p²`, zero for a field.
    pub fn pi(self) -> u64 {
        match self {
            Coeffs::Field(_) => 0,
            Coeffs::Dual(p) | Coeffs::Zmod(p) => p,
        }
    }

    pub fn residue(self, a: u64) -> u64 {
        a % self.p()
    }

    /// Coefficient of `π` (or of `p` over `Z/p²`).
    pub fn pi_part(self, a: u64) -> u64 {
        match self {
            Coeffs::Field(_) => 0,
            Coeffs::Dual(p) | Coeffs::Zmod(p) => a / p,
        }
    }
}

/// `C(n, k)` over the integers.
pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
