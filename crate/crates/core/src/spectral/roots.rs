//! Rigorous isolation of the largest real root.
//!
//! The polynomial is reduced to its square-free part and a Sturm sequence
//! counts distinct roots above a rational point. Bisection on
//! `[-B, B]`, with `B` the Cauchy bound, keeps the invariant "at least one
//! root above `lo`, none above `hi`". All arithmetic is exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::poly::{Polynomial, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("tolerance must be positive")]
    BadTolerance,
}

fn sturm_sequence(q: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![q.primitive(), q.derivative().primitive()];
    loop {
        let k = seq.len();
        if seq[k - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[k - 2].div_rem(&seq[k - 1]);
        seq.push(r.neg().primitive());
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn changes_at(seq: &[RatPoly], x: &BigRational) -> usize {
    sign_changes(seq.iter().map(|p| sign(&p.eval(x))))
}

fn changes_at_infinity(seq: &[RatPoly]) -> usize {
    sign_changes(seq.iter().map(|p| sign(p.leading().unwrap())))
}

/// `1 + max |c_i / c_d|`, rounded up to an integer.
pub fn cauchy_bound(p: &Polynomial) -> BigInt {
    let lead = BigRational::from_integer(p.leading().expect("nonzero polynomial").abs());
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| BigRational::from_integer(c.abs()) / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    (max + BigRational::one()).ceil().to_integer()
}

/// Bracket `(lo, hi]` around the largest real root, or the root itself when
/// it was hit exactly.
#[derive(Clone, Debug)]
pub struct RootBracket {
    squarefree: RatPoly,
    seq: Vec<RatPoly>,
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: bool,
}

impl RootBracket {
    pub fn isolate(p: &Polynomial) -> Result<Self, RootError> {
        match p.degree() {
            None | Some(0) => return Err(RootError::Constant),
            _ => {}
        }
        let rp = p.to_rational();
        let (q, _) = rp.div_rem(&rp.gcd(&rp.derivative()));
        let q = q.primitive();
        let seq = sturm_sequence(&q);
        let b = BigRational::from_integer(cauchy_bound(p));
        let lo = -b.clone();
        if changes_at(&seq, &lo) == changes_at_infinity(&seq) {
            return Err(RootError::NoRealRoot);
        }
        Ok(Self { squarefree: q, seq, lo, hi: b, exact: false })
    }

    fn roots_above(&self, x: &BigRational) -> usize {
        changes_at(&self.seq, x) - changes_at_infinity(&self.seq)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halves the bracket once.
    pub fn bisect(&mut self) {
        if self.exact {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        if self.squarefree.eval(&mid).is_zero() {
            let linear = RatPoly::new(vec![-mid.clone(), BigRational::one()]);
            let (reduced, _) = self.squarefree.div_rem(&linear);
            let reduced = reduced.primitive();
            let above = if reduced.degree().unwrap_or(0) == 0 {
                0
            } else {
                let seq = sturm_sequence(&reduced);
                changes_at(&seq, &mid) - changes_at_infinity(&seq)
            };
            if above == 0 {
                self.lo = mid.clone();
                self.hi = mid;
                self.exact = true;
            } else {
                self.seq = sturm_sequence(&reduced);
                self.squarefree = reduced;
                self.lo = mid;
            }
        } else if self.roots_above(&mid) >= 1 {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine(&mut self, width: &BigRational) {
        while !self.exact && self.width() > *width {
            self.bisect();
        }
    }

    /// Refines until the bracket holds exactly one distinct root.
    pub fn isolate_single(&mut self) {
        while !self.exact && self.roots_above(&self.lo) > 1 {
            self.bisect();
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether the bracketed root is also a root of `other`.
    fn is_root_of(&mut self, other: &RatPoly) -> bool {
        self.isolate_single();
        if other.is_zero() {
            return true;
        }
        if self.exact {
            return other.eval(&self.lo).is_zero();
        }
        let g = self.squarefree.gcd(other);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let seq = sturm_sequence(&g);
        // roots of g are roots of the square-free part; exactly one of those
        // lies in (lo, hi]
        changes_at(&seq, &self.lo) > changes_at(&seq, &self.hi)
    }
}

fn tolerance(tol: f64) -> Result<BigRational, RootError> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(RootError::BadTolerance);
    }
    BigRational::from_float(tol).ok_or(RootError::BadTolerance)
}

/// Largest real root of `p`, to within `tol`.
pub fn largest_real_root(p: &Polynomial, tol: f64) -> Result<f64, RootError> {
    let width = tolerance(tol)?;
    let mut b = RootBracket::isolate(p)?;
    b.refine(&width);
    Ok(b.midpoint_f64())
}

/// Exact comparison of the largest real roots of two polynomials.
pub fn compare_largest_roots(p: &Polynomial, q: &Polynomial) -> Result<Ordering, RootError> {
    let mut a = RootBracket::isolate(p)?;
    let mut b = RootBracket::isolate(q)?;
    // a root of q is at most the largest root of q, and vice versa
    match (a.is_root_of(&q.to_rational()), b.is_root_of(&p.to_rational())) {
        (true, true) => return Ok(Ordering::Equal),
        (true, false) => return Ok(Ordering::Less),
        (false, true) => return Ok(Ordering::Greater),
        (false, false) => {}
    }
    loop {
        if a.lo >= b.hi {
            return Ok(Ordering::Greater);
        }
        if b.lo >= a.hi {
            return Ok(Ordering::Less);
        }
        if a.exact && b.exact {
            return Ok(a.lo.cmp(&b.lo));
        }
        if a.width() >= b.width() && !a.exact {
            a.bisect();
        } else {
            b.bisect();
        }
    }
}
