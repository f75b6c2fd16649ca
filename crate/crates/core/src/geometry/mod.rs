//! Polyhedra in (C, Q, E) space.

pub mod dd;
pub mod lp;
mod region;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)] // inherent in some feature sets
use num_traits::Float;

use crate::{Error, Result};

pub use region::{
    minkowski_sum, slide_and_clip, unslide_and_clip, Constraint, Facet, FacetDescription, RateRegion, Relation,
    DEFAULT_TOL,
};

/// Net rates of classical communication, quantum communication and
/// entanglement. Negative means consumed, positive means generated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateTriple {
    pub c: f64,
    pub q: f64,
    pub e: f64,
}

impl RateTriple {
    pub const ORIGIN: RateTriple = RateTriple { c: 0.0, q: 0.0, e: 0.0 };

    pub const fn new(c: f64, q: f64, e: f64) -> Self {
        Self { c, q, e }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c, self.q, self.e]
    }

    pub fn dot(self, o: RateTriple) -> f64 {
        self.c * o.c + self.q * o.q + self.e * o.e
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.c.abs().max(self.q.abs()).max(self.e.abs())
    }

    pub fn is_finite(self) -> bool {
        self.c.is_finite() && self.q.is_finite() && self.e.is_finite()
    }

    /// Lexicographic total order on (C, Q, E).
    pub fn total_cmp(&self, o: &RateTriple) -> core::cmp::Ordering {
        self.c.total_cmp(&o.c).then(self.q.total_cmp(&o.q)).then(self.e.total_cmp(&o.e))
    }
}

impl Add for RateTriple {
    type Output = RateTriple;
    fn add(self, o: RateTriple) -> RateTriple {
        RateTriple::new(self.c + o.c, self.q + o.q, self.e + o.e)
    }
}

impl Sub for RateTriple {
    type Output = RateTriple;
    fn sub(self, o: RateTriple) -> RateTriple {
        RateTriple::new(self.c - o.c, self.q - o.q, self.e - o.e)
    }
}

impl Neg for RateTriple {
    type Output = RateTriple;
    fn neg(self) -> RateTriple {
        RateTriple::new(-self.c, -self.q, -self.e)
    }
}

impl Mul<RateTriple> for f64 {
    type Output = RateTriple;
    fn mul(self, t: RateTriple) -> RateTriple {
        RateTriple::new(self * t.c, self * t.q, self * t.e)
    }
}

impl fmt::Display for RateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `+ 0.0` folds negative zero.
        write!(f, "({}, {}, {})", self.c + 0.0, self.q + 0.0, self.e + 0.0)
    }
}

/// Direction of unbounded growth, stored with unit Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray(RateTriple);

impl Ray {
    pub fn new(direction: RateTriple) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Invalid(format!("ray direction {direction} is zero or not finite")));
        }
        // Already-unit input is kept bit-for-bit so normalization is idempotent.
        if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(Ray(direction));
        }
        Ok(Ray((1.0 / n) * direction))
    }

    pub fn direction(&self) -> RateTriple {
        self.0
    }
}

impl Neg for Ray {
    type Output = Ray;
    fn neg(self) -> Ray {
        Ray(-self.0)
    }
}

/// A coordinate of rate space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    C,
    Q,
    E,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::C, Axis::Q, Axis::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::C => "C",
            Axis::Q => "Q",
            Axis::E => "E",
        }
    }

    /// The other two axes, in order.
    pub fn others(self) -> [Axis; 2] {
        match self {
            Axis::C => [Axis::Q, Axis::E],
            Axis::Q => [Axis::C, Axis::E],
            Axis::E => [Axis::C, Axis::Q],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "C" | "c" => Ok(Axis::C),
            "Q" | "q" => Ok(Axis::Q),
            "E" | "e" => Ok(Axis::E),
            other => Err(Error::Invalid(format!("unknown axis `{other}`"))),
        }
    }
}

/// Sign constraint on one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
    Any,
}

impl Sign {
    fn admits(self, v: f64, tol: f64) -> bool {
        match self {
            Sign::Plus => v >= -tol,
            Sign::Minus => v <= tol,
            Sign::Zero => v.abs() <= tol,
            Sign::Any => true,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Zero => "0",
            Sign::Any => "±",
        }
    }
}

/// Closed orthant, quadrant or line: one [`Sign`] per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthantSpec {
    pub signs: [Sign; 3],
}

impl OrthantSpec {
    pub const ALL: OrthantSpec = OrthantSpec { signs: [Sign::Any; 3] };

    pub const fn new(c: Sign, q: Sign, e: Sign) -> Self {
        Self { signs: [c, q, e] }
    }

    /// Accepts `(+,-,0)`, `+-0`, `+,-,±`; `*` and `±` both mean unconstrained.
    pub fn parse(text: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for ch in text.chars() {
            let s = match ch {
                '+' => Sign::Plus,
                '-' | '−' => Sign::Minus,
                '0' => Sign::Zero,
                '±' | '*' => Sign::Any,
                '(' | ')' | ',' | ' ' => continue,
                _ => return Err(Error::Invalid(format!("bad sign `{ch}` in orthant `{text}`"))),
            };
            signs.push(s);
        }
        if signs.len() != 3 {
            return Err(Error::Invalid(format!("orthant `{text}` needs three signs")));
        }
        Ok(Self::new(signs[0], signs[1], signs[2]))
    }

    pub fn is_unconstrained(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Any)
    }

    pub fn contains(&self, x: RateTriple, tol: f64) -> bool {
        self.signs.iter().zip(x.to_array()).all(|(s, v)| s.admits(v, tol))
    }

    /// The constraints as half-spaces `a·x ≤ 0` (a zero sign gives two).
    pub fn halfspaces(&self) -> Vec<[f64; 3]> {
        let mut out = Vec::new();
        for (i, s) in self.signs.iter().enumerate() {
            let mut a = [0.0; 3];
            match s {
                Sign::Plus => {
                    a[i] = -1.0;
                    out.push(a);
                }
                Sign::Minus => {
                    a[i] = 1.0;
                    out.push(a);
                }
                Sign::Zero => {
                    a[i] = 1.0;
                    out.push(a);
                    a[i] = -1.0;
                    out.push(a);
                }
                Sign::Any => {}
            }
        }
        out
    }

    /// The closed octants (all signs `+` or `-`) whose closure contains `x`
    /// up to `tol`.
    pub fn octants_containing(x: RateTriple, tol: f64) -> Vec<OrthantSpec> {
        let opts = |v: f64| -> Vec<Sign> {
            let mut s = Vec::new();
            if v >= -tol {
                s.push(Sign::Plus);
            }
            if v <= tol {
                s.push(Sign::Minus);
            }
            s
        };
        let mut out = Vec::new();
        for &c in &opts(x.c) {
            for &q in &opts(x.q) {
                for &e in &opts(x.e) {
                    out.push(OrthantSpec::new(c, q, e));
                }
            }
        }
        out
    }
}

impl fmt::Display for OrthantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.signs[0].symbol(), self.signs[1].symbol(), self.signs[2].symbol())
    }
}
