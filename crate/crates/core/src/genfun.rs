//! Truncated bivariate power series in `x` and `y` with exact integer
//! coefficients.
//!
//! Series are truncated by `x`-degree only. Every series built from
//! constants, `x` and `xy` has `y`-degree at most its `x`-degree, so the
//! coefficients are stored as a triangle: row `a` holds `[x^a y^0 .. x^a y^a]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term is {0}, expected 1")]
    NotUnit(BigInt),
    #[error("x^{a} is beyond the truncation order {order}")]
    BeyondOrder { a: usize, order: usize },
    #[error("monomial x^{a} y^{b} has y-degree above x-degree")]
    NotTriangular { a: usize, b: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    rows: Vec<Vec<BigInt>>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, rows: (0..=order).map(|a| vec![BigInt::zero(); a + 1]).collect() }
    }

    pub fn constant(order: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        s.rows[0][0] = c.into();
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, 1)
    }

    /// `c x^a y^b`; zero when `a` exceeds the order.
    pub fn monomial(order: usize, a: usize, b: usize, c: impl Into<BigInt>) -> Result<Self, SeriesError> {
        if b > a {
            return Err(SeriesError::NotTriangular { a, b });
        }
        let mut s = Self::zero(order);
        if a <= order {
            s.rows[a][b] = c.into();
        }
        Ok(s)
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(order, 1, 0, 1).expect("triangular")
    }

    pub fn xy(order: usize) -> Self {
        Self::monomial(order, 1, 1, 1).expect("triangular")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[x^a y^b]`. Zero for `b > a`; an error for `a` above the order,
    /// where truncation leaves the value unknown.
    pub fn coeff(&self, a: usize, b: usize) -> Result<BigInt, SeriesError> {
        if a > self.order {
            return Err(SeriesError::BeyondOrder { a, order: self.order });
        }
        Ok(self.rows[a].get(b).cloned().unwrap_or_default())
    }

    /// Row `a` of the coefficient triangle.
    pub fn row(&self, a: usize) -> Option<&[BigInt]> {
        self.rows.get(a).map(Vec::as_slice)
    }

    /// The same series at a lower or equal order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self { order, rows: self.rows[..=order].to_vec() }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (row, other_row) in out.rows.iter_mut().zip(&other.rows) {
            for (c, d) in row.iter_mut().zip(other_row) {
                *c += d;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { order: self.order, rows: self.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    /// Cauchy product, truncated.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (a1, row1) in self.rows.iter().enumerate() {
            for (b1, c1) in row1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (a2, row2) in other.rows[..=self.order - a1].iter().enumerate() {
                    for (b2, c2) in row2.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        out.rows[a1 + a2][b1 + b2] += c1 * c2;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Multiplies by `x^a`.
    pub fn shift_x(&self, a: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (src, row) in self.rows.iter().enumerate().take((self.order + 1).saturating_sub(a)) {
            out.rows[src + a][..row.len()].clone_from_slice(row);
        }
        out
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inv_unit(&self) -> Result<Self, SeriesError> {
        if !self.rows[0][0].is_one() {
            return Err(SeriesError::NotUnit(self.rows[0][0].clone()));
        }
        // h = 1 - (f - 1) h, solved row by row; row 0 of f is just the 1.
        let mut h = Self::one(self.order);
        for a in 1..=self.order {
            for b in 0..=a {
                let mut acc = BigInt::zero();
                for a1 in 1..=a {
                    for b1 in 0..=a1.min(b) {
                        let f = &self.rows[a1][b1];
                        if f.is_zero() || b - b1 > a - a1 {
                            continue;
                        }
                        acc += f * &h.rows[a - a1][b - b1];
                    }
                }
                h.rows[a][b] = -acc;
            }
        }
        Ok(h)
    }

    /// Sum of the coefficients of row `a`: `[x^a]` at `y = 1`.
    pub fn row_sum(&self, a: usize) -> Result<BigInt, SeriesError> {
        if a > self.order {
            return Err(SeriesError::BeyondOrder { a, order: self.order });
        }
        Ok(self.rows[a].iter().sum())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.rows.iter().flatten().all(|c| !c.is_negative())
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries(order {}: ", self.order)?;
        let mut first = true;
        for (a, row) in self.rows.iter().enumerate() {
            for (b, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "{c}*x^{a}y^{b}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

/// `sum_{n=1}^{order} x^n (1+xy)^C(n,2) / prod_{j=0}^{n-1} (1 - (1+xy)^j xy)`
/// truncated at `x`-degree `order`. Terms with `n > order` vanish under the
/// truncation, so the result is exact.
pub fn rhs_series(order: usize) -> BiSeries {
    let mut total = BiSeries::zero(order);
    for n in 1..=order {
        // The x^n prefactor means the rest is only needed to order - n.
        let inner_order = order - n;
        let one_plus_xy = BiSeries::one(inner_order).add(&BiSeries::xy(inner_order)).expect("same order");
        let xy = BiSeries::xy(inner_order);
        let mut term = one_plus_xy.pow((n * (n - 1) / 2) as u64);
        for j in 0..n {
            let factor = BiSeries::one(inner_order)
                .sub(&one_plus_xy.pow(j as u64).mul(&xy).expect("same order"))
                .expect("same order");
            term = term.mul(&factor.inv_unit().expect("constant term is 1")).expect("same order");
        }
        let mut placed = BiSeries::zero(order);
        for (a, row) in term.rows.iter().enumerate() {
            placed.rows[a + n][..row.len()].clone_from_slice(row);
        }
        total = total.add(&placed).expect("same order");
    }
    total
}
