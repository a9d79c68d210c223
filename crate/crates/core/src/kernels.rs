//! Scalar building blocks shared by every closed form: binary entropy,
//! base-2 inverse hyperbolic tangent, and the eigenvalues of the rank-two
//! marginals.
//!
//! All entropies are in bits.

use std::f64::consts::{FRAC_PI_2, LN_2};

use crate::error::{Error, Result};

/// Width of the band in which slightly out-of-range floating-point values
/// are snapped back to the boundary. Anything further out is an error.
pub const CLAMP_EPS: f64 = 1e-12;

/// Tolerance on `c^2 + s^2 = 1`.
pub const OVERLAP_EPS: f64 = 1e-12;

/// Snaps `x` into `[0, 1]` when it lies within [`CLAMP_EPS`] of the interval.
pub fn clamp_unit(what: &'static str, x: f64) -> Result<f64> {
    if !(-CLAMP_EPS..=1.0 + CLAMP_EPS).contains(&x) {
        return Err(Error::Domain {
            what,
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Weight `p` of the pointer state `|0_S>`; `q = 1 - p` is the other branch.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const HALF: Probability = Probability(0.5);

    pub fn new(value: f64) -> Result<Self> {
        clamp_unit("probability", value).map(Probability)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `q = 1 - p`.
    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }

    #[inline]
    pub fn pq(self) -> f64 {
        self.0 * (1.0 - self.0)
    }

    /// True for `p` in `{0, 1}`, where every correlation measure vanishes.
    #[inline]
    pub fn is_degenerate(self) -> bool {
        self.0 == 0.0 || self.0 == 1.0
    }

    /// Shannon entropy of the pointer populations, `-p log p - q log q`.
    pub fn entropy(self) -> f64 {
        entropy_bits(self.0)
    }
}

/// `s^(2k)` together with `1 - s^(2k)`, the latter evaluated without
/// cancellation when `s` is close to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquaredPower {
    pub value: f64,
    pub complement: f64,
}

/// Record-state overlap `s = <0_E|1_E>` of one c-maybe gate and its partner
/// `c`, with `c^2 + s^2 = 1` and both nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overlap {
    s: f64,
    c: f64,
}

impl Overlap {
    /// Gate rotation angle `a` in `[0, pi/2]`: `s = sin a`, `c = cos a`.
    pub fn from_angle(angle: f64) -> Result<Self> {
        if !(-CLAMP_EPS..=FRAC_PI_2 + CLAMP_EPS).contains(&angle) {
            return Err(Error::Domain {
                what: "angle",
                value: angle,
                domain: "[0, pi/2]",
            });
        }
        let a = angle.clamp(0.0, FRAC_PI_2);
        Ok(Overlap {
            s: a.sin(),
            c: a.cos(),
        })
    }

    pub fn from_c2(c2: f64) -> Result<Self> {
        let c2 = clamp_unit("c^2", c2)?;
        Ok(Overlap {
            s: (1.0 - c2).sqrt(),
            c: c2.sqrt(),
        })
    }

    pub fn from_s(s: f64) -> Result<Self> {
        let s = clamp_unit("s", s)?;
        Ok(Overlap {
            s,
            c: ((1.0 - s) * (1.0 + s)).sqrt(),
        })
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    /// `c^2` recovered from the stored pair.
    pub fn c2(&self) -> f64 {
        self.c * self.c
    }

    /// `s^k` for a real exponent `k >= 0`, with `s^0 = 1` even when `s = 0`.
    pub fn pow(&self, k: f64) -> f64 {
        if k == 0.0 {
            1.0
        } else if self.s == 0.0 {
            0.0
        } else {
            (k * self.s.ln()).exp()
        }
    }

    /// `s^(2k)` and `1 - s^(2k)` for a real exponent `k >= 0`.
    pub fn squared_pow(&self, k: f64) -> SquaredPower {
        if k == 0.0 {
            SquaredPower {
                value: 1.0,
                complement: 0.0,
            }
        } else if self.s == 0.0 {
            SquaredPower {
                value: 0.0,
                complement: 1.0,
            }
        } else {
            let e = 2.0 * k * self.s.ln();
            SquaredPower {
                value: e.exp(),
                complement: -e.exp_m1(),
            }
        }
    }
}

/// Binary entropy `h(x) = -x log2 x - (1 - x) log2 (1 - x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    clamp_unit("binary entropy argument", x).map(entropy_bits)
}

/// `h` for an argument already known to lie in `[0, 1]`.
#[inline]
pub(crate) fn entropy_bits(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x), "entropy argument {x}");
    let x = if x > 0.5 { 1.0 - x } else { x };
    if x <= 0.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (-x).ln_1p() / LN_2
}

/// `ln(1 + y) - y` without cancellation for small `|y|`.
pub(crate) fn ln_1p_minus(y: f64) -> f64 {
    if y.abs() >= 0.1 {
        return y.ln_1p() - y;
    }
    let mut power = y * y;
    let mut sum = 0.0;
    let mut k = 2.0;
    loop {
        let term = power / k;
        let next = if k % 2.0 == 0.0 { sum - term } else { sum + term };
        if next == sum {
            return sum;
        }
        sum = next;
        power *= y;
        k += 1.0;
    }
}

/// `h(a) - h(a + d)` in bits for `0 < a <= 1/2` and `-a <= d <= 0`, accurate
/// to full relative precision however small `d` is.
pub(crate) fn entropy_drop(a: f64, d: f64) -> f64 {
    debug_assert!(a > 0.0 && a <= 0.5 && d <= 0.0 && a + d >= -1e-15);
    let b = (a + d).max(0.0);
    let y1 = d / a;
    let y2 = -d / (1.0 - a);
    let low = if b > 0.0 { b * ln_1p_minus(y1) } else { 0.0 };
    let kl = d * d / (a * (1.0 - a)) + low + (1.0 - b) * ln_1p_minus(y2);
    let linear = d * (a / (1.0 - a)).ln();
    (kl.max(0.0) + linear) / LN_2
}

/// `Arctanh(x) / ln 2` on `[0, 1)`. The singular endpoint is rejected.
pub fn arctanh2(x: f64) -> Result<f64> {
    if !(-CLAMP_EPS..1.0).contains(&x) {
        return Err(Error::Domain {
            what: "arctanh2 argument",
            value: x,
            domain: "[0, 1)",
        });
    }
    Ok(x.max(0.0).atanh() / LN_2)
}

/// `Arctanh(1 - d) / ln 2` given `d = 1 - x > 0` directly, so that arguments
/// within a few ulps of one keep their precision.
pub(crate) fn arctanh2_from_gap(d: f64) -> f64 {
    debug_assert!(d > 0.0 && d <= 1.0);
    0.5 * ((2.0 - d).ln() - d.ln()) / LN_2
}

/// Smaller eigenvalue `(1 - sqrt((q-p)^2 + 4 u p q)) / 2` of
/// `[[p, sqrt(u p q)], [sqrt(u p q), q]]`, written in terms of `1 - u` so that
/// small eigenvalues keep full relative precision.
pub(crate) fn minor_eigenvalue(p: Probability, u: SquaredPower) -> f64 {
    let pq = p.pq();
    let d = p.complement() - p.value();
    let radicand = (d * d + 4.0 * pq * u.value).min(1.0);
    2.0 * pq * u.complement / (1.0 + radicand.sqrt())
}

/// Entropy of a rank-two marginal whose branch overlap squared is `u`.
pub(crate) fn branch_entropy(p: Probability, u: SquaredPower) -> f64 {
    entropy_bits(minor_eigenvalue(p, u).min(0.5))
}

/// Larger eigenvalue `lambda+_{k,p}` of the marginals carrying `s^k`.
pub fn lambda_plus(k: u64, p: Probability, ov: Overlap) -> f64 {
    1.0 - lambda_minus(k, p, ov)
}

/// Companion eigenvalue `lambda-_{k,p} = 1 - lambda+_{k,p}`.
pub fn lambda_minus(k: u64, p: Probability, ov: Overlap) -> f64 {
    minor_eigenvalue(p, ov.squared_pow(k as f64))
}
