use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;
use crate::Rational;

/// Sparse polynomial in `X₁ … Xₙ` with exact rational coefficients.
///
/// Exponent vectors index the terms; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl RationalPolynomial {
    pub fn zero(n: usize) -> Self {
        RationalPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn monomial(alpha: Vec<u32>, coefficient: Rational) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, coefficient);
        p
    }

    /// The variable `X_i` (1-based).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut alpha = vec![0; n];
        alpha[i - 1] = 1;
        Self::monomial(alpha, Rational::one())
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: alpha.len(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, coefficient: Rational) {
        debug_assert_eq!(alpha.len(), self.n);
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Largest `Σ αᵢ` over the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        RationalPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Value at `X` with compensated summation of the terms.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(alpha, c)| {
                let m: f64 = alpha
                    .iter()
                    .zip(x)
                    .map(|(&a, &xi)| xi.powi(a as i32))
                    .product();
                c.to_f64().unwrap_or(f64::NAN) * m
            })
            .sum::<NeumaierSum>()
            .value())
    }

    /// Parses sums of products such as `X1^2 - 4*X2 - 6` or `1/3*x1*x3`,
    /// the format produced by `Display`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(n);
        let mut rest = cleaned.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(Error::Parse(format!("expected + or - before {rest:?}"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (alpha, c) = parse_term(&rest[..end], n)?;
            out.add_term(alpha, if negative { -c } else { c });
            rest = &rest[end..];
        }
        Ok(out)
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(alpha, c)| {
                alpha
                    .iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&a, xi)| acc * num_traits::pow(xi.clone(), a as usize))
            })
            .sum())
    }
}

fn parse_term(term: &str, n: usize) -> Result<(Vec<u32>, Rational)> {
    let bad = |what: &str| Error::Parse(format!("{what} in term {term:?}"));
    if term.is_empty() {
        return Err(bad("missing factor"));
    }
    let mut alpha = vec![0u32; n];
    let mut coefficient = Rational::one();
    for factor in term.split('*') {
        if let Some(var) = factor.strip_prefix(['X', 'x']) {
            let (index, power) = match var.split_once('^') {
                Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (var, 1),
            };
            let index: usize = index.parse().map_err(|_| bad("bad variable index"))?;
            if index == 0 || index > n {
                return Err(Error::Parse(format!("variable X{index} outside X1..X{n}")));
            }
            alpha[index - 1] += power;
        } else {
            let (num, den) = factor.split_once('/').unwrap_or((factor, "1"));
            let num: num_bigint::BigInt = num.parse().map_err(|_| bad("bad number"))?;
            let den: num_bigint::BigInt = den.parse().map_err(|_| bad("bad number"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            coefficient *= Rational::new(num, den);
        }
    }
    Ok((alpha, coefficient))
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c);
        }
        out
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let mut out = RationalPolynomial::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                let alpha = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(alpha, c * d);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalPolynomial {
            type Output = RationalPolynomial;

            fn $method(self, rhs: RationalPolynomial) -> RationalPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalPolynomial {
    /// Terms by descending total degree, e.g. `X1^2 - 4*X2 - 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (alpha, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> = alpha
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("X{}", i + 1)
                    } else {
                        format!("X{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
