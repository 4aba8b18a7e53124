//! Fixed-capacity real vectors for ambient dimensions up to [`MAX_DIM`].

use std::fmt;
use std::ops::{Add, Deref, DerefMut, Mul, Neg, Sub};

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 6;

/// A point or direction in ℝ^d, stored inline.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    len: u8,
    data: [f64; MAX_DIM],
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Self {
            len: dim as u8,
            data: [0.0; MAX_DIM],
        }
    }

    /// The `axis`-th standard basis vector of ℝ^dim.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v[axis] = 1.0;
        v
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        let mut v = Self::zeros(coords.len());
        v.data[..coords.len()].copy_from_slice(coords);
        v
    }

    pub fn dim(&self) -> usize {
        self.len as usize
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.len, other.len);
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalized(&self) -> Vector {
        *self * (1.0 / self.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        let mut out = *self;
        for (o, b) in out.iter_mut().zip(other.iter()) {
            *o += s * b;
        }
        out
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.data[..self.len as usize]
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.data[..self.len as usize]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        self.axpy(1.0, &rhs)
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        self.axpy(-1.0, &rhs)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(mut self, s: f64) -> Vector {
        for x in self.iter_mut() {
            *x *= s;
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self * -1.0
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for x in self.iter() {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoordVisitor;
        impl<'de> Visitor<'de> for CoordVisitor {
            type Value = Vector;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a sequence of at most {MAX_DIM} numbers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vector, A::Error> {
                let mut coords = Vec::with_capacity(MAX_DIM);
                while let Some(x) = seq.next_element::<f64>()? {
                    if coords.len() == MAX_DIM {
                        return Err(de::Error::invalid_length(MAX_DIM + 1, &self));
                    }
                    coords.push(x);
                }
                Ok(Vector::from_slice(&coords))
            }
        }
        deserializer.deserialize_seq(CoordVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Vector::from_slice(&[1.0, 2.0, 3.0]);
        let b = Vector::unit(3, 1);
        assert_eq!(a.dot(&b), 2.0);
        assert_eq!(&*(a - b), &[1.0, 1.0, 3.0]);
        assert_eq!((a * 2.0)[2], 6.0);
        assert!((Vector::from_slice(&[3.0, 4.0]).norm() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn json_roundtrip() {
        let a = Vector::from_slice(&[0.5, -1.25]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[0.5,-1.25]");
        let b: Vector = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<Vector>("[1,2,3,4,5,6,7]").is_err());
    }
}
