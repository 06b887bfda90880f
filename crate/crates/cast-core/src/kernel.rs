//! Exact scalar/vector arithmetic and the orientation predicates everything
//! else is built on.
//!
//! All predicates over directions are sign conditions, invariant under
//! positive scaling, so vectors are never normalized: normalization would
//! leave the rational field. Floating point appears only in
//! [`rotation_to_top`], which exists purely for reporting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar. Closed under `+ - * /` (nonzero divisor);
/// comparisons are exact.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("zero vector where a direction was required")]
    ZeroVector,
}

/// Shorthand for an integer-valued scalar.
pub fn rat(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the exact fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact 3-vector. Used both for positions and for directions; a direction is
/// meaningful only up to positive scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(rat(x), rat(y), rat(z))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &other.x, &self.y + &other.y, &self.z + &other.z)
    }

    pub fn sub(&self, other: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &other.x, &self.y - &other.y, &self.z - &other.z)
    }

    pub fn neg(&self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }

    pub fn scale(&self, s: &Scalar) -> Vec3 {
        Vec3::new(&self.x * s, &self.y * s, &self.z * s)
    }

    /// Rescales to the unique primitive integer vector on the same ray
    /// (integer coordinates, gcd 1, orientation preserved).
    pub fn primitive(&self) -> Vec3 {
        assert!(!self.is_zero(), "primitive() requires a nonzero vector");
        let lcm = self
            .x
            .denom()
            .lcm(self.y.denom())
            .lcm(self.z.denom());
        let xi = self.x.numer() * (&lcm / self.x.denom());
        let yi = self.y.numer() * (&lcm / self.y.denom());
        let zi = self.z.numer() * (&lcm / self.z.denom());
        let g = xi.gcd(&yi).gcd(&zi);
        Vec3::new(
            BigRational::from_integer(&xi / &g),
            BigRational::from_integer(&yi / &g),
            BigRational::from_integer(&zi / &g),
        )
    }

    /// True iff `self = t * other` for some t > 0.
    pub fn is_positive_multiple_of(&self, other: &Vec3) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        cross(self, other).is_zero() && dot(self, other).is_positive()
    }

    pub fn to_f64_array(&self) -> [f64; 3] {
        [
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
            self.z.to_f64().unwrap_or(f64::NAN),
        ]
    }
}

/// Exact inner product.
pub fn dot(a: &Vec3, b: &Vec3) -> Scalar {
    &a.x * &b.x + &a.y * &b.y + &a.z * &b.z
}

/// Exact cross product; zero iff the arguments are parallel.
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    Vec3::new(
        &a.y * &b.z - &a.z * &b.y,
        &a.z * &b.x - &a.x * &b.z,
        &a.x * &b.y - &a.y * &b.x,
    )
}

/// Exact triple product `det[a b c]`.
pub fn triple(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    dot(a, &cross(b, c))
}

/// An exact orthogonal (not orthonormal) right-handed chart frame.
///
/// `w` is the chart pole; `u`, `v` span the plane of the chart. A chart point
/// `(x, y)` lifts to the direction `x*u + y*v + w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub u: Vec3,
    pub v: Vec3,
    pub w: Vec3,
}

impl Basis {
    /// Lifts a chart point to the direction it represents.
    pub fn lift(&self, x: &Scalar, y: &Scalar) -> Vec3 {
        self.u.scale(x).add(&self.v.scale(y)).add(&self.w)
    }
}

/// Deterministic exact orthogonal basis with the given pole.
///
/// `u = pole x e` where `e` is the standard axis least parallel to the pole,
/// and `v = w x u`, which makes `u x v` a positive multiple of `w`.
pub fn orthogonal_basis(pole: &Vec3) -> Result<Basis, KernelError> {
    if pole.is_zero() {
        return Err(KernelError::ZeroVector);
    }
    let ax = pole.x.abs();
    let ay = pole.y.abs();
    let az = pole.z.abs();
    // Axis with the smallest |component| is the least parallel to the pole.
    let e = if ax <= ay && ax <= az {
        Vec3::from_ints(1, 0, 0)
    } else if ay <= az {
        Vec3::from_ints(0, 1, 0)
    } else {
        Vec3::from_ints(0, 0, 1)
    };
    let u = cross(pole, &e).primitive();
    let v = cross(pole, &u).primitive();
    Ok(Basis {
        u,
        v,
        w: pole.clone(),
    })
}

/// Orthonormal matrix (floating point) rotating the given inward normal to
/// point straight down, i.e. `R * normalize(n) = (0, 0, -1)`.
///
/// Reporting-only: never used inside a predicate.
pub fn rotation_to_top(inward_normal: &Vec3) -> Result<[[f64; 3]; 3], KernelError> {
    if inward_normal.is_zero() {
        return Err(KernelError::ZeroVector);
    }
    let [x, y, z] = inward_normal.to_f64_array();
    let len = (x * x + y * y + z * z).sqrt();
    let n = [x / len, y / len, z / len];
    let target = [0.0, 0.0, -1.0];
    // Rodrigues rotation about axis = n x target.
    let axis = [
        n[1] * target[2] - n[2] * target[1],
        n[2] * target[0] - n[0] * target[2],
        n[0] * target[1] - n[1] * target[0],
    ];
    let sin = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let cos = n[0] * target[0] + n[1] * target[1] + n[2] * target[2];
    if sin < 1e-15 {
        if cos > 0.0 {
            return Ok([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        }
        // Antiparallel: half turn about any axis orthogonal to n; n is within
        // 1e-15 of +/-z here, so the x axis works.
        return Ok([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
    }
    let k = [axis[0] / sin, axis[1] / sin, axis[2] / sin];
    let c = cos;
    let s = sin;
    let t = 1.0 - c;
    Ok([
        [
            t * k[0] * k[0] + c,
            t * k[0] * k[1] - s * k[2],
            t * k[0] * k[2] + s * k[1],
        ],
        [
            t * k[0] * k[1] + s * k[2],
            t * k[1] * k[1] + c,
            t * k[1] * k[2] - s * k[0],
        ],
        [
            t * k[0] * k[2] - s * k[1],
            t * k[1] * k[2] + s * k[0],
            t * k[2] * k[2] + c,
        ],
    ])
}

/// Applies a reporting rotation to an exact vector, in floating point.
pub fn apply_rotation(r: &[[f64; 3]; 3], v: &Vec3) -> [f64; 3] {
    let [x, y, z] = v.to_f64_array();
    [
        r[0][0] * x + r[0][1] * y + r[0][2] * z,
        r[1][0] * x + r[1][1] * y + r[1][2] * z,
        r[2][0] * x + r[2][1] * y + r[2][2] * z,
    ]
}

/// Parses a decimal, integer, rational (`p/q`) or scientific literal into an
/// exact scalar, e.g. `0.5 -> 1/2`, `-1.25e-2 -> -1/80`.
pub fn parse_exact(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().ok()?
    };
    numer *= BigInt::from(sign);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let pow = |e: u32| -> BigInt { num_traits::pow::pow(ten.clone(), e as usize) };
    let value = if scale >= 0 {
        BigRational::from_integer(numer * pow(scale as u32))
    } else {
        BigRational::new(numer, pow((-scale) as u32))
    };
    Some(value)
}

/// Formats a scalar as `num/den` (reduced).
pub fn format_exact(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}
