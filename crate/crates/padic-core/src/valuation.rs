use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// A p-adic valuation: either a finite exponent or the infinite valuation of
/// zero. `Infinite` compares greater than every `Finite` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    /// The finite value, or `None` for the valuation of zero.
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exact power of `p` dividing `n`, with `val_p(0) = Infinite`. `p >= 2`.
pub fn val_p(n: &BigInt, p: u64) -> Valuation {
    assert!(p >= 2, "valuation base must be at least 2");
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut k = 0u64;
    let mut rest = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return Valuation::Finite(k);
        }
        rest = q;
        k += 1;
    }
}

/// `val_p` on machine integers.
pub fn val_p_u64(n: u64, p: u64) -> Valuation {
    assert!(p >= 2, "valuation base must be at least 2");
    if n == 0 {
        return Valuation::Infinite;
    }
    let mut k = 0;
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    Valuation::Finite(k)
}
