use super::multi::MultiPoly;
use crate::error::{Error, Result};

/// A power series in a formal variable `t`, truncated after `t^order`, with
/// polynomial coefficients sharing one ring and variable list.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTrunc {
    coeffs: Vec<MultiPoly>,
}

impl SeriesTrunc {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let first =
            coeffs.first().ok_or_else(|| Error::InvalidArgument("series needs at least the t^0 coefficient".into()))?;
        for c in &coeffs[1..] {
            if c.ring() != first.ring() || c.vars() != first.vars() {
                return Err(Error::VariableMismatch { left: first.vars().to_vec(), right: c.vars().to_vec() });
            }
        }
        Ok(SeriesTrunc { coeffs })
    }

    /// `1 + m*t` truncated at `t^order`.
    pub fn linear_factor(m: &MultiPoly, order: usize) -> SeriesTrunc {
        let mut coeffs = vec![m.one_like()];
        coeffs.extend((1..=order).map(|k| if k == 1 { m.clone() } else { m.zero_like() }));
        SeriesTrunc { coeffs }
    }

    pub fn one_like(template: &MultiPoly, order: usize) -> SeriesTrunc {
        let mut coeffs = vec![template.one_like()];
        coeffs.extend((0..order).map(|_| template.zero_like()));
        SeriesTrunc { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Option<&MultiPoly> {
        self.coeffs.get(k)
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &SeriesTrunc) -> Result<SeriesTrunc> {
        let order = self.order().min(other.order());
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[0].zero_like();
            for k in 0..=n {
                let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b)?)?;
            }
            out.push(acc);
        }
        Ok(SeriesTrunc { coeffs: out })
    }

    /// If the series has the shape `1 + m*t`, returns `m`.
    fn linear_part(&self) -> Option<&MultiPoly> {
        let one = self.coeffs[0].one_like();
        let shaped = self.coeffs[0] == one && self.coeffs.len() >= 2 && self.coeffs[2..].iter().all(MultiPoly::is_zero);
        shaped.then(|| &self.coeffs[1])
    }
}

/// Coefficient of `t^j` in a product of factors `1 + m_k t`, truncating every
/// intermediate product at degree `j`.
pub fn series_product_coefficient(factors: &[SeriesTrunc], j: usize) -> Result<MultiPoly> {
    let mut linear = Vec::with_capacity(factors.len());
    for f in factors {
        if j > f.order() {
            return Err(Error::InvalidArgument(format!("target degree {j} exceeds truncation order {}", f.order())));
        }
        linear.push(
            f.linear_part().ok_or_else(|| Error::InvalidArgument("every factor must have the form 1 + m*t".into()))?,
        );
    }
    let monomials: Vec<MultiPoly> = linear.into_iter().cloned().collect();
    linear_product_coefficient(&monomials, j)
}

/// Same as [`series_product_coefficient`] but takes the monomials `m_k` directly.
pub fn linear_product_coefficient(monomials: &[MultiPoly], j: usize) -> Result<MultiPoly> {
    let template = monomials.first().ok_or_else(|| Error::InvalidArgument("empty factor list".into()))?;
    // acc[k] = coefficient of t^k in the running product, k <= j
    let mut acc: Vec<MultiPoly> = vec![template.zero_like(); j + 1];
    acc[0] = template.one_like();
    for (count, m) in monomials.iter().enumerate() {
        let top = j.min(count + 1);
        for k in (1..=top).rev() {
            if acc[k - 1].is_zero() {
                continue;
            }
            let shifted = acc[k - 1].mul(m)?;
            acc[k] = acc[k].add(&shifted)?;
        }
    }
    Ok(acc.swap_remove(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coef::CoefRing;

    fn vars(names: &[&str]) -> Vec<MultiPoly> {
        names.iter().map(|n| MultiPoly::var(CoefRing::Integers, names, n).unwrap()).collect()
    }

    #[test]
    fn elementary_coefficients() {
        let v = vars(&["x1", "x2"]);
        let f: Vec<SeriesTrunc> = v.iter().map(|m| SeriesTrunc::linear_factor(m, 2)).collect();
        assert_eq!(series_product_coefficient(&f, 2).unwrap().to_string(), "x1*x2");
        assert_eq!(series_product_coefficient(&f, 1).unwrap().to_string(), "x1 + x2");
        assert!(series_product_coefficient(&f, 3).is_err());
    }

    #[test]
    fn bilinear_factors_match_expansion() {
        let names = ["x1", "x2", "y1", "y2"];
        let v = vars(&names);
        let mut ms = Vec::new();
        for a in 0..2 {
            for b in 2..4 {
                ms.push(v[a].mul(&v[b]).unwrap());
            }
        }
        let f: Vec<SeriesTrunc> = ms.iter().map(|m| SeriesTrunc::linear_factor(m, 1)).collect();
        let expected = v[0].add(&v[1]).unwrap().mul(&v[2].add(&v[3]).unwrap()).unwrap();
        assert_eq!(series_product_coefficient(&f, 1).unwrap(), expected);
    }

    #[test]
    fn rejects_non_linear_factors() {
        let v = vars(&["x"]);
        let s = SeriesTrunc::new(vec![v[0].one_like(), v[0].clone(), v[0].clone()]).unwrap();
        assert!(series_product_coefficient(&[s], 1).is_err());
    }

    #[test]
    fn full_series_product() {
        let v = vars(&["x"]);
        let a = SeriesTrunc::linear_factor(&v[0], 3);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coefficient(2).unwrap().to_string(), "x^2");
        assert!(sq.coefficient(3).unwrap().is_zero());
    }
}
