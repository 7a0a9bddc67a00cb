//! Sparse multivariate polynomials with a fixed graded reverse-lexicographic
//! term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use super::ring::Coeff;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different variable spaces ({0} vs {1} variables)")]
    VariableMismatch(usize, usize),
    #[error("not divisible")]
    NotDivisible,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("form {index} must be homogeneous of degree {expected}")]
    FormDegree { index: usize, expected: i64 },
    #[error("substituted polynomial is not weighted homogeneous")]
    NotWeightedHomogeneous,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} divides a coefficient denominator")]
    PrimeDividesDenominator(u64),
    #[error("substitution needs one form per variable ({expected}, got {got})")]
    FormCount { expected: usize, got: usize },
}

/// Exponent vector. The `Ord` instance is graded reverse-lexicographic:
/// higher total degree wins; on equal degree the monomial whose trailing
/// exponent difference is negative is the larger one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(&a, &b)| a - b)
                    .collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            let d = self.0[i] as i64 - other.0[i] as i64;
            if d != 0 {
                return if d < 0 { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positive weights per variable for a weighted grading (at least one must
/// be positive; zero weights are allowed for individual variables).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedGrading(pub Vec<u32>);

impl WeightedGrading {
    pub fn new(weights: Vec<u32>) -> WeightedGrading {
        assert!(
            weights.iter().any(|&w| w > 0),
            "at least one weight must be positive"
        );
        WeightedGrading(weights)
    }
}

/// Sparse polynomial: canonical map from exponent vectors to nonzero
/// coefficients, ordered by the grevlex term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, c: C) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exponents), c);
        }
        p
    }

    /// The variable `x_i` as a polynomial.
    pub fn variable(nvars: usize, i: usize, one: C) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        MultiPoly::monomial(nvars, exps, one)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Leading (grevlex-largest) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    fn check_space(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn insert_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_space(other).expect("variable space mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_space(other).expect("variable space mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (mm, cc) in &self.terms {
            out.insert_term(mm.mul(m), cc.mul(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::unit(self.nvars), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let one = self
                .terms
                .values()
                .next()
                .map(Coeff::one_like)
                .unwrap_or_else(|| panic!("0^0 of a zero polynomial without a unit"));
            return MultiPoly::constant(self.nvars, one);
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division: returns the quotient when the remainder of division
    /// by the single divisor is zero, `NotDivisible` otherwise.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_space(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::NotDivisible),
        };
        let lc_inv = lc.inv().expect("field coefficient");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(q_mono) = rm.div(&lm) else {
                return Err(PolyError::NotDivisible);
            };
            let q_coeff = rc.mul(&lc_inv);
            let term = MultiPoly::monomial(self.nvars, q_mono.0.clone(), q_coeff.clone());
            quot = quot.add(&term);
            rem = rem.sub(&divisor.mul_term(&q_mono, &q_coeff));
        }
        Ok(quot)
    }

    /// Total degree (unweighted); error for the zero polynomial.
    pub fn total_degree(&self) -> Result<u64, PolyError> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn weighted_degree(&self, grading: &WeightedGrading) -> Result<i64, PolyError> {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(&grading.0))
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn is_weighted_homogeneous(&self, grading: &WeightedGrading) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(&grading.0));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Formal partial derivative in variable `var`. The exponent multiplier
    /// is produced by repeated addition, so this is domain-agnostic.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            let mut scaled = c.zero_like();
            for _ in 0..e {
                scaled = scaled.add(c);
            }
            out.insert_term(Monomial(exps), scaled);
        }
        out
    }

    /// Gradient with respect to all variables.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|v| self.partial(v)).collect()
    }

    /// Substitutes a constant for variable `var`, keeping the variable
    /// space.
    pub fn assign_var(&self, var: usize, value: &C) -> Self {
        assert!(var < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff.mul(value);
            }
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.insert_term(Monomial(exps), coeff);
        }
        out
    }

    /// Removes a variable that no longer occurs (all exponents zero).
    pub fn drop_var(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            assert_eq!(m.0[var], 0, "variable {var} still occurs");
            let mut exps = m.0.clone();
            exps.remove(var);
            out.insert_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Evaluates the polynomial on one form per variable; all forms must
    /// live in a common target variable space.
    pub fn substitute(&self, forms: &[Self]) -> Result<Self, PolyError> {
        if forms.len() != self.nvars {
            return Err(PolyError::FormCount {
                expected: self.nvars,
                got: forms.len(),
            });
        }
        let target_nvars = forms
            .first()
            .map(MultiPoly::nvars)
            .ok_or(PolyError::FormCount {
                expected: self.nvars,
                got: 0,
            })?;
        for f in forms {
            if f.nvars != target_nvars {
                return Err(PolyError::VariableMismatch(f.nvars, target_nvars));
            }
        }
        // Cache powers of each form up to its highest exponent.
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let one = match self.terms.values().next() {
            Some(c) => c.one_like(),
            None => return Ok(MultiPoly::zero(target_nvars)),
        };
        let mut powers: Vec<Vec<MultiPoly<C>>> = Vec::with_capacity(self.nvars);
        for (i, f) in forms.iter().enumerate() {
            let mut row = vec![MultiPoly::constant(target_nvars, one.clone())];
            for e in 1..=max_exp[i] {
                let next = row[(e - 1) as usize].mul(f);
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = MultiPoly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Coefficient-wise map into another domain; fails fast on the first
    /// coefficient the map rejects.
    pub fn map_coefficients<D: Coeff, E>(
        &self,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<MultiPoly<D>, E> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), f(c)?);
        }
        Ok(out)
    }
}

/// Substitution with the degree bookkeeping of a weighted-homogeneous
/// polynomial: form `i` must be homogeneous of `form_degrees[i]` (a nonzero
/// constant when the degree is 0), the input must be weighted homogeneous
/// under `grading`, and the result must come out homogeneous of the input's
/// weighted total degree.
pub fn substitute_homogeneous<C: Coeff>(
    f: &MultiPoly<C>,
    forms: &[MultiPoly<C>],
    form_degrees: &[i64],
    grading: &WeightedGrading,
) -> Result<MultiPoly<C>, PolyError> {
    if forms.len() != form_degrees.len() {
        return Err(PolyError::FormCount {
            expected: form_degrees.len(),
            got: forms.len(),
        });
    }
    for (i, (form, &deg)) in forms.iter().zip(form_degrees).enumerate() {
        let ok = !form.is_zero()
            && form.is_homogeneous()
            && form.total_degree().expect("nonzero") as i64 == deg;
        if !ok {
            return Err(PolyError::FormDegree {
                index: i,
                expected: deg,
            });
        }
    }
    if !f.is_weighted_homogeneous(grading) {
        return Err(PolyError::NotWeightedHomogeneous);
    }
    let total = f.weighted_degree(grading)?;
    let out = f.substitute(forms)?;
    if !out.is_zero() {
        debug_assert!(out.is_homogeneous());
        debug_assert_eq!(out.total_degree().expect("nonzero") as i64, total);
    }
    Ok(out)
}
