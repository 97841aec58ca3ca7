use std::fmt;

use num_traits::{One, Signed};

use super::{MultiPoly, PolyError};

/// Truncated power series in `z` with polynomial coefficients, exact through `z^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<MultiPoly>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries { coeffs: vec![MultiPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> PowerSeries {
        PowerSeries::monomial(MultiPoly::one(), 0, order)
    }

    /// `c * z^power`, truncated.
    pub fn monomial(c: MultiPoly, power: usize, order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<MultiPoly>, order: usize) -> PowerSeries {
        coeffs.resize(order + 1, MultiPoly::zero());
        PowerSeries { coeffs }
    }

    /// `1 / (1 - c z)`.
    pub fn geometric(c: &MultiPoly, order: usize) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = MultiPoly::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = &p * c;
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&MultiPoly, PolyError> {
        self.coeffs.get(n).ok_or(PolyError::IndexBeyondTruncation { index: n, order: self.order() })
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries { coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries { coeffs: (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    /// Cauchy product, exact through the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &MultiPoly) -> PowerSeries {
        self.map_coeffs(|x| x * c)
    }

    pub fn pow(&self, mut e: u32) -> PowerSeries {
        let mut base = self.clone();
        let mut acc = PowerSeries::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn invert(&self) -> Result<PowerSeries, PolyError> {
        let c0 =
            self.coeffs[0].as_constant().filter(|c| c.abs().is_one()).ok_or(PolyError::NonInvertibleConstantTerm)?;
        let unit = MultiPoly::constant(c0);
        let order = self.order();
        let mut inv: Vec<MultiPoly> = Vec::with_capacity(order + 1);
        inv.push(unit.clone());
        for n in 1..=order {
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !inv[n - k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            // u^{-1} = u for a unit u of the integers
            inv.push(-(&acc * &unit));
        }
        Ok(PowerSeries { coeffs: inv })
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
