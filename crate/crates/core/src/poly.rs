//! Polynomials in the coordinates `p1..p4` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{fmt_scalar, int, to_f64, MinkVector, Scalar};

type Monomial = [u32; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; 4], c);
        p
    }

    /// The coordinate function `p_i` (1-based).
    pub fn var(i: usize) -> Self {
        assert!((1..=4).contains(&i));
        let mut m = [0; 4];
        m[i - 1] = 1;
        let mut p = Poly::zero();
        p.add_term(m, Scalar::one());
        p
    }

    /// The linear form `Σ w_i p_i`.
    pub fn linear(w: &MinkVector) -> Self {
        (1..=4).fold(Poly::zero(), |acc, i| acc.add(&Poly::var(i).scale(&w[i - 1])))
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = std::array::from_fn(|i| ma[i] + mb[i]);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::constant(Scalar::one()), |acc, _| acc.mul(self))
    }

    /// Partial derivative with respect to `p_i` (1-based).
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m[i - 1];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[i - 1] -= 1;
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    pub fn eval(&self, p: &MinkVector) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (m, c)| {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term *= &p[i];
                }
            }
            acc + term
        })
    }

    pub fn eval_f64(&self, p: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                to_f64(c) * (0..4).map(|i| p[i].powi(m[i] as i32)).product::<f64>()
            })
            .sum()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = *c < Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("p{}", i + 1) } else { format!("p{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() || !mag.is_one() {
                f.write_str(&fmt_scalar(&mag))?;
                if !vars.is_empty() {
                    f.write_str("*")?;
                }
            }
            f.write_str(&vars.join("*"))?;
        }
        Ok(())
    }
}

/// A function `P(p)·exp(w·p)`, used as an orbit invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFn {
    pub poly: Poly,
    pub exp_weight: Option<MinkVector>,
}

impl InvariantFn {
    pub fn polynomial(poly: Poly) -> Self {
        InvariantFn { poly, exp_weight: None }
    }

    pub fn with_exp(poly: Poly, w: MinkVector) -> Self {
        InvariantFn { poly, exp_weight: Some(w) }
    }

    pub fn eval_f64(&self, p: &[f64; 4]) -> f64 {
        let base = self.poly.eval_f64(p);
        match &self.exp_weight {
            None => base,
            Some(w) => {
                let wf = w.to_f64();
                base * (0..4).map(|i| wf[i] * p[i]).sum::<f64>().exp()
            }
        }
    }

    /// Derivative along the affine field `F(p) = Xp + x`, divided by `exp(w·p)`:
    /// `∇P·F + P·(w·F)`. Invariance means this polynomial vanishes identically.
    pub fn derivative_along(&self, field: &[Poly; 4]) -> Poly {
        let mut out = Poly::zero();
        for (i, fi) in field.iter().enumerate() {
            out = out.add(&self.poly.derivative(i + 1).mul(fi));
        }
        if let Some(w) = &self.exp_weight {
            let wf = (0..4).fold(Poly::zero(), |acc, i| acc.add(&field[i].scale(&w[i])));
            out = out.add(&self.poly.mul(&wf));
        }
        out
    }
}

impl fmt::Display for InvariantFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exp_weight {
            None => write!(f, "{}", self.poly),
            Some(w) => write!(f, "({})*exp({})", self.poly, Poly::linear(w)),
        }
    }
}
