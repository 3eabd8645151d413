use serde::Serialize;

/// A power series in one variable known up to (and excluding) `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    coeffs: Vec<i64>,
}

impl Series {
    /// Coefficients `c_0, …, c_{order-1}`.
    pub fn new(coeffs: Vec<i64>) -> Self {
        Series { coeffs }
    }

    /// A polynomial, padded with zeros to `order`.
    pub fn polynomial(mut coeffs: Vec<i64>, order: usize) -> Self {
        coeffs.resize(order.max(coeffs.len()), 0);
        coeffs.truncate(order);
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Option<i64> {
        self.coeffs.get(k).copied()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `f(t) ↦ f(-t)`.
    pub fn negate_variable(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        }
    }

    /// Product, truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|m| (0..=m).map(|k| self.coeffs[k] * other.coeffs[m - k]).sum())
            .collect();
        Series { coeffs }
    }
}

/// One monomial `coeff · z^z · y^y` of a two-variable series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTerm {
    pub z: i64,
    pub y: i64,
    pub coeff: i64,
}

/// A two-variable Laurent series in `z` (polynomial in `y`), exact in total
/// `y`-degree below `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesPoly {
    pub order: usize,
    pub terms: Vec<SeriesTerm>,
}

impl SeriesPoly {
    /// `Σ c_m (yz)^m · coeff · z^shift`.
    pub fn from_diagonal(c: &Series, scale: i64, shift: i64) -> Self {
        let terms = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(m, &v)| SeriesTerm { z: m as i64 + shift, y: m as i64, coeff: scale * v })
            .collect();
        SeriesPoly { order: c.order(), terms }
    }

    /// Coefficient of `z^z y^y`; `None` beyond the truncation order.
    pub fn coeff(&self, z: i64, y: i64) -> Option<i64> {
        if y < 0 || y as usize >= self.order {
            return None;
        }
        Some(self.terms.iter().filter(|t| t.z == z && t.y == y).map(|t| t.coeff).sum())
    }

    /// Terms with a negative power of `z`.
    pub fn polar_part(&self) -> Vec<SeriesTerm> {
        self.terms.iter().copied().filter(|t| t.z < 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        // (1 - t) * (1 + t + t^2 + ...) = 1
        let g = Series::new(vec![1; 6]);
        let p = Series::polynomial(vec![1, -1], 6);
        assert_eq!(p.mul(&g).coeffs(), &[1, 0, 0, 0, 0, 0]);
        assert_eq!(g.negate_variable().coeffs(), &[1, -1, 1, -1, 1, -1]);
    }

    #[test]
    fn truncation_is_respected() {
        let a = Series::new(vec![1, 2, 3]);
        let b = Series::new(vec![1, 1, 1, 1, 1]);
        assert_eq!(a.mul(&b).order(), 3);
        let s = SeriesPoly::from_diagonal(&a, -1, -2);
        assert_eq!(s.coeff(-2, 0), Some(-1));
        assert_eq!(s.coeff(0, 2), Some(-3));
        assert_eq!(s.coeff(1, 3), None);
        assert_eq!(s.polar_part().len(), 2);
    }
}
