use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::ProbPoly;
use crate::exact::to_f64;

const MAX_REFINE_STEPS: usize = 4096;

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Descartes bound on the number of roots of `f` in the open interval `(a, b)`.
fn variations(f: &ProbPoly, a: &BigRational, b: &BigRational) -> usize {
    let d = match f.degree() {
        Some(d) => d,
        None => return 0,
    };
    let lin = ProbPoly::new(vec![a.clone(), b.clone()]);
    let one_t = ProbPoly::from_ints(&[1, 1]);
    let mut acc = ProbPoly::zero();
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &lin.pow(k) * &one_t.pow(d - k);
        acc = &acc + &term.scale(c);
    }
    acc.sign_variations()
}

fn isolate_into(
    f: &ProbPoly,
    a: &BigRational,
    b: &BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    match variations(f, a, b) {
        0 => {}
        1 => out.push((a.clone(), b.clone())),
        _ => {
            let m = half(a, b);
            isolate_into(f, a, &m, out);
            if f.eval(&m).is_zero() {
                out.push((m.clone(), m.clone()));
            }
            isolate_into(f, &m, b, out);
        }
    }
}

/// Real roots of `f` in the open interval `(a, b)`, ascending, each as an exact algebraic number.
pub fn real_roots(f: &ProbPoly, a: &BigRational, b: &BigRational) -> Vec<AlgebraicNumber> {
    if f.degree().unwrap_or(0) == 0 || a >= b {
        return Vec::new();
    }
    let sf = f.square_free();
    let mut raw = Vec::new();
    isolate_into(&sf, a, b, &mut raw);
    raw.into_iter()
        .map(|(lo, hi)| AlgebraicNumber::tighten(sf.clone(), lo, hi))
        .collect()
}

/// A real algebraic number: a root of a square-free polynomial, pinned by an isolating interval.
///
/// Either `lo == hi` (the number is that rational) or the polynomial has exactly one root in
/// `[lo, hi]` and takes nonzero values of opposite sign at the endpoints.
#[derive(Debug, Clone)]
pub struct AlgebraicNumber {
    poly: ProbPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicNumber {
    pub fn rational(value: BigRational) -> Self {
        let poly = ProbPoly::new(vec![-value.clone(), BigRational::one()]);
        Self {
            poly,
            lo: value.clone(),
            hi: value,
        }
    }

    /// The unique root of `poly` in the open interval `(lo, hi)`; `None` unless there is exactly one.
    pub fn from_isolating(poly: &ProbPoly, lo: BigRational, hi: BigRational) -> Option<Self> {
        let mut roots = real_roots(poly, &lo, &hi);
        if roots.len() == 1 {
            roots.pop()
        } else {
            None
        }
    }

    /// √2 − 1, root of p² + 2p − 1.
    pub fn sqrt2_minus_1() -> Self {
        Self::from_isolating(
            &ProbPoly::from_ints(&[-1, 2, 1]),
            BigRational::new(2.into(), 5.into()),
            BigRational::new(1.into(), 2.into()),
        )
        .expect("isolating interval for sqrt2 - 1")
    }

    /// 2 − √2, root of p² − 4p + 2.
    pub fn two_minus_sqrt2() -> Self {
        Self::from_isolating(
            &ProbPoly::from_ints(&[2, -4, 1]),
            BigRational::new(1.into(), 2.into()),
            BigRational::new(3.into(), 5.into()),
        )
        .expect("isolating interval for 2 - sqrt2")
    }

    // (lo, hi) holds exactly one root of the square-free `poly`; endpoint values may vanish.
    fn tighten(poly: ProbPoly, mut lo: BigRational, mut hi: BigRational) -> Self {
        if lo == hi {
            return Self::rational(lo);
        }
        loop {
            if !poly.eval(&lo).is_zero() && !poly.eval(&hi).is_zero() {
                return Self { poly, lo, hi };
            }
            let m = half(&lo, &hi);
            if poly.eval(&m).is_zero() {
                return Self::rational(m);
            }
            let mut left = Vec::new();
            isolate_into(&poly, &lo, &m, &mut left);
            if left.is_empty() {
                lo = m;
            } else {
                hi = m;
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.lo)
    }

    pub fn defining_poly(&self) -> &ProbPoly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// One bisection step.
    fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let m = half(&self.lo, &self.hi);
        let fm = self.poly.eval(&m);
        if fm.is_zero() {
            *self = Self::rational(m);
        } else if sign(&fm) == sign(&self.poly.eval(&self.lo)) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Shrink the isolating interval below `width`.
    pub fn refine(&mut self, width: &BigRational) {
        while !self.is_rational() && self.width() >= *width {
            self.bisect();
        }
    }

    pub fn refined(&self, width: &BigRational) -> Self {
        let mut out = self.clone();
        out.refine(width);
        out
    }

    /// Exact sign of `g` at this number.
    pub fn sign_of(&self, g: &ProbPoly) -> Ordering {
        if let Some(r) = self.as_rational() {
            return g.eval(r).cmp(&BigRational::zero());
        }
        if g.is_zero() {
            return Ordering::Equal;
        }
        let common = g.gcd(&self.poly);
        if common.degree().unwrap_or(0) > 0 {
            let (a, b) = (common.eval(&self.lo), common.eval(&self.hi));
            if sign(&a) * sign(&b) < 0 {
                return Ordering::Equal;
            }
        }
        let mut x = self.clone();
        for _ in 0..MAX_REFINE_STEPS {
            if let Some(r) = x.as_rational() {
                return g.eval(r).cmp(&BigRational::zero());
            }
            let ga = g.eval(&x.lo);
            if !ga.is_zero()
                && sign(&ga) == sign(&g.eval(&x.hi))
                && variations(g, &x.lo, &x.hi) == 0
            {
                return ga.cmp(&BigRational::zero());
            }
            x.bisect();
        }
        unreachable!("sign determination did not converge")
    }

    /// A rational strictly between `self` and `other` (`self < other` required).
    pub fn rational_between(&self, other: &Self) -> BigRational {
        let (mut a, mut b) = (self.clone(), other.clone());
        for _ in 0..MAX_REFINE_STEPS {
            if a.hi < b.lo {
                return half(&a.hi, &b.lo);
            }
            // an irrational number never sits on its own endpoint
            if a.hi == b.lo && !a.is_rational() && !b.is_rational() {
                return a.hi.clone();
            }
            a.bisect();
            b.bisect();
        }
        unreachable!("numbers are not strictly ordered")
    }

    pub fn to_f64(&self) -> f64 {
        let x = self.refined(&BigRational::new(1.into(), BigInt::from(10).pow(17)));
        to_f64(&half(&x.lo, &x.hi))
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Some(r) = other.as_rational() {
            // sign of (x - r) at self
            return self.sign_of(&ProbPoly::new(vec![-r.clone(), BigRational::one()]));
        }
        if let Some(r) = self.as_rational() {
            return other
                .sign_of(&ProbPoly::new(vec![-r.clone(), BigRational::one()]))
                .reverse();
        }
        let common = self.poly.gcd(&other.poly);
        let shared = common.degree().unwrap_or(0) > 0
            && self.sign_of(&common) == Ordering::Equal
            && other.sign_of(&common) == Ordering::Equal;
        let (mut a, mut b) = (self.clone(), other.clone());
        for _ in 0..MAX_REFINE_STEPS {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if shared {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                let sf = common.square_free();
                if !sf.eval(&lo).is_zero()
                    && !sf.eval(&hi).is_zero()
                    && variations(&sf, &lo, &hi) == 1
                {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
            if a.is_rational() || b.is_rational() {
                return a.cmp(&b);
            }
        }
        unreachable!("comparison did not converge")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{:.12}", self.to_f64()),
        }
    }
}
