//! Coefficient fields.
//!
//! Every algebraic routine in this crate is generic over [`Field`]. The
//! algorithms need exact equality (a Gröbner basis over floating point is
//! meaningless), so the blanket implementation covers `num_rational::Ratio`
//! over any signed integer type. [`crate::Rational`] (`Ratio<BigInt>`) is the
//! type used by the parser, the CLI and the trajectory oracle; fixed-width
//! ratios such as `Ratio<i64>` work for small inputs but may overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

/// An exact field of characteristic zero.
pub trait Field:
    Num + Clone + Eq + Hash + Debug + Display + Signed + Send + Sync + 'static
{
    /// Returns the positive factor `s` such that `s * c` is a primitive
    /// integer vector for the given coefficients (denominators cleared, common
    /// content removed). Returns one for an empty or all-zero input.
    fn primitive_scale<'a, I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>;

    /// Builds the field element `num / den`. `den` must be nonzero.
    fn from_fraction(num: i64, den: i64) -> Self;
}

impl<T> Field for Ratio<T>
where
    T: Integer + Signed + Clone + Hash + Debug + Display + Send + Sync + From<i64> + 'static,
{
    fn primitive_scale<'a, I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut den_lcm = T::one();
        let mut nonzero = Vec::new();
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            den_lcm = den_lcm.lcm(c.denom());
            nonzero.push(c);
        }
        if nonzero.is_empty() {
            return Self::one();
        }
        let mut content = T::zero();
        for c in nonzero {
            let scaled = c.numer().clone() * (den_lcm.clone() / c.denom().clone());
            content = content.gcd(&scaled);
            if content.is_one() {
                break;
            }
        }
        Ratio::new(den_lcm, content)
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Ratio::new(T::from(num), T::from(den))
    }
}

/// Scales `coeffs` in place to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn make_primitive<F: Field>(coeffs: &mut [F]) {
    let mut scale = F::primitive_scale(coeffs.iter());
    if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            scale = -scale;
        }
    }
    if !scale.is_one() {
        for c in coeffs.iter_mut() {
            *c = c.clone() * scale.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Ratio<BigInt>;

    fn q(n: i64, d: i64) -> Q {
        Q::from_fraction(n, d)
    }

    #[test]
    fn primitive_scale_clears_denominators_and_content() {
        let v = [q(1, 2), q(3, 4), q(0, 1)];
        assert_eq!(Q::primitive_scale(v.iter()), q(4, 1));
        let w = [q(6, 1), q(-9, 1)];
        assert_eq!(Q::primitive_scale(w.iter()), q(1, 3));
        assert_eq!(Q::primitive_scale([].iter()), q(1, 1));
    }

    #[test]
    fn make_primitive_fixes_sign() {
        let mut v = vec![q(0, 1), q(-2, 3), q(4, 3)];
        make_primitive(&mut v);
        assert_eq!(v, vec![q(0, 1), q(1, 1), q(-2, 1)]);
    }

    #[test]
    fn fixed_width_ratio_is_a_field() {
        let v = [Ratio::<i64>::new(2, 3), Ratio::new(4, 5)];
        assert_eq!(Ratio::<i64>::primitive_scale(v.iter()), Ratio::new(15, 2));
    }
}
