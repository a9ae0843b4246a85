use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::num::{parse_integer, Integer};

/// A polynomial with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(coefficients: Vec<Integer>) -> Self {
        IntPolynomial { coefficients }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![Integer::from(c)])
    }

    /// `x^degree`.
    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![Integer::zero(); degree + 1];
        c[degree] = Integer::one();
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coefficients
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * x + c)
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// `"c0,c1,c2"` is `c0 + c1·x + c2·x²`.
    fn from_str(s: &str) -> Result<Self> {
        let coefficients = s
            .split(',')
            .map(parse_integer)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coefficients))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}n")?,
                _ => write!(f, "{c}n^{deg}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
