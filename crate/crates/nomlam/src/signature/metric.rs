//! The truncation metric `d(t, s) = 2^{-m}` where `m` is the last depth at
//! which the truncations of `t` and `s` agree, and its alpha variant.

use std::cmp::Ordering;
use std::fmt;

use crate::signature::alpha::alpha_eq_trunc;
use crate::signature::term::{RawTerm, TruncTerm};

/// A dyadic value in `[0, 1]`: either `0` or `2^{-m}`. Exactly the values the
/// truncation metric takes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    neg_exp: Option<u32>,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { neg_exp: None };
    pub const ONE: Dyadic = Dyadic { neg_exp: Some(0) };

    /// `2^{-m}`.
    pub fn pow2_neg(m: u32) -> Dyadic {
        Dyadic { neg_exp: Some(m) }
    }

    pub fn is_zero(self) -> bool {
        self.neg_exp.is_none()
    }

    /// The exponent `m` with `self = 2^{-m}`, when nonzero.
    pub fn neg_exp(self) -> Option<u32> {
        self.neg_exp
    }

    pub fn as_f64(self) -> f64 {
        match self.neg_exp {
            None => 0.0,
            Some(m) => (0.5f64).powi(m as i32),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        match (self.neg_exp, other.neg_exp) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            // bigger exponent means smaller value
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.neg_exp {
            None => write!(f, "0"),
            Some(0) => write!(f, "1"),
            Some(m) if m <= 30 => write!(f, "1/{}", 1u64 << m),
            Some(m) => write!(f, "2^-{m}"),
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn dist_by<F>(t: &TruncTerm, s: &TruncTerm, eq: F) -> Dyadic
where
    F: Fn(&TruncTerm, &TruncTerm) -> bool,
{
    let bound = t.height().max(s.height()) + 1;
    for d in 1..=bound {
        if !eq(&t.truncate(d), &s.truncate(d)) {
            return Dyadic::pow2_neg((d - 1) as u32);
        }
    }
    Dyadic::ZERO
}

/// Distance between truncations of finite terms; `0` exactly on identical
/// terms.
pub fn dist_trunc(t: &TruncTerm, s: &TruncTerm) -> Dyadic {
    dist_by(t, s, |a, b| a == b)
}

pub fn dist_raw(t: &RawTerm, s: &RawTerm) -> Dyadic {
    dist_trunc(&t.to_trunc(), &s.to_trunc())
}

/// The alpha variant: truncations are compared up to alpha-equivalence, so
/// the distance is `0` exactly on alpha-equivalent terms.
pub fn dist_alpha_trunc(t: &TruncTerm, s: &TruncTerm) -> Dyadic {
    dist_by(t, s, alpha_eq_trunc)
}

pub fn dist_alpha_raw(t: &RawTerm, s: &RawTerm) -> Dyadic {
    dist_alpha_trunc(&t.to_trunc(), &s.to_trunc())
}
