//! Multivariate truncated Taylor arithmetic.
//!
//! A [`Jet`] is a polynomial in `m` nilpotent increments `t_1..t_m` truncated
//! at total degree `K`. Evaluating a function on jets whose constant parts are
//! a point `p` and whose linear parts are the coordinate increments yields the
//! Taylor polynomial of the function at `p`, exact up to rounding. Monomials
//! are enumerated by degree first, so a space of lower degree is a prefix of a
//! space of higher degree with the same variable count.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

type SpaceCache = HashMap<(usize, usize), Arc<JetSpace>>;

/// Monomial layout and product table for jets with a fixed number of
/// variables and truncation degree.
pub struct JetSpace {
    nvars: usize,
    degree: usize,
    exps: Vec<Vec<u8>>,
    degs: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    // for each left monomial i: (right monomial j, product monomial k)
    mul: Vec<Vec<(u32, u32)>>,
    // dec[v][k]: index of monomial k with exponent of v lowered by one
    dec: Vec<Vec<Option<u32>>>,
}

impl fmt::Debug for JetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetSpace")
            .field("nvars", &self.nvars)
            .field("degree", &self.degree)
            .field("len", &self.exps.len())
            .finish()
    }
}

fn monomials_of_degree(nvars: usize, d: usize, out: &mut Vec<Vec<u8>>) {
    fn rec(pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u8;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    let mut cur = vec![0u8; nvars];
    rec(0, d, &mut cur, out);
}

impl JetSpace {
    fn build(nvars: usize, degree: usize) -> Self {
        let mut exps = Vec::new();
        let mut degs = Vec::new();
        for d in 0..=degree {
            let before = exps.len();
            monomials_of_degree(nvars, d, &mut exps);
            degs.extend(std::iter::repeat_n(d, exps.len() - before));
        }
        let index: HashMap<Vec<u8>, usize> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut mul = Vec::with_capacity(exps.len());
        for (i, ei) in exps.iter().enumerate() {
            let mut row = Vec::new();
            for (j, ej) in exps.iter().enumerate() {
                if degs[i] + degs[j] > degree {
                    // graded order: every later j has degree >= degs[j]
                    break;
                }
                let prod: Vec<u8> = ei.iter().zip(ej).map(|(a, b)| a + b).collect();
                row.push((j as u32, index[&prod] as u32));
            }
            mul.push(row);
        }
        let dec = (0..nvars)
            .map(|v| {
                exps.iter()
                    .map(|e| {
                        if e[v] == 0 {
                            None
                        } else {
                            let mut lowered = e.clone();
                            lowered[v] -= 1;
                            Some(index[&lowered] as u32)
                        }
                    })
                    .collect()
            })
            .collect();
        JetSpace {
            nvars,
            degree,
            exps,
            degs,
            index,
            mul,
            dec,
        }
    }

    /// Shared space for `nvars` variables truncated at `degree`.
    pub fn get(nvars: usize, degree: usize) -> Arc<JetSpace> {
        static CACHE: OnceLock<Mutex<SpaceCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("jet space cache poisoned");
        guard
            .entry((nvars, degree))
            .or_insert_with(|| Arc::new(JetSpace::build(nvars, degree)))
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, k: usize) -> &[u8] {
        &self.exps[k]
    }

    pub fn monomial_degree(&self, k: usize) -> usize {
        self.degs[k]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

/// Truncated multivariate Taylor polynomial.
#[derive(Clone)]
pub struct Jet {
    space: Arc<JetSpace>,
    c: Vec<f64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("nvars", &self.space.nvars)
            .field("degree", &self.space.degree)
            .field("coeffs", &self.c)
            .finish()
    }
}

impl Jet {
    pub fn constant(space: &Arc<JetSpace>, value: f64) -> Jet {
        let mut c = vec![0.0; space.len()];
        c[0] = value;
        Jet {
            space: space.clone(),
            c,
        }
    }

    /// The jet of the coordinate function `var` at `value`.
    pub fn variable(space: &Arc<JetSpace>, value: f64, var: usize) -> Jet {
        let mut j = Jet::constant(space, value);
        if space.degree >= 1 {
            let mut e = vec![0u8; space.nvars];
            e[var] = 1;
            j.c[space.index[&e]] = 1.0;
        }
        j
    }

    /// Jets for every coordinate of `point`, as variables `offset..offset+len`.
    pub fn variables(space: &Arc<JetSpace>, point: &[f64], offset: usize) -> Vec<Jet> {
        point
            .iter()
            .enumerate()
            .map(|(i, &v)| Jet::variable(space, v, offset + i))
            .collect()
    }

    /// Plain number lifted into the degree-0 space.
    pub fn scalar(value: f64) -> Jet {
        Jet::constant(&JetSpace::get(0, 0), value)
    }

    pub fn from_coeffs(space: &Arc<JetSpace>, c: Vec<f64>) -> Jet {
        assert_eq!(
            c.len(),
            space.len(),
            "coefficient count does not match space"
        );
        Jet {
            space: space.clone(),
            c,
        }
    }

    /// A constant in the same space as `self`.
    pub fn lift(&self, value: f64) -> Jet {
        Jet::constant(&self.space, value)
    }

    pub fn zero_like(&self) -> Jet {
        self.lift(0.0)
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn coeff(&self, exps: &[u8]) -> f64 {
        self.space.index_of(exps).map_or(0.0, |k| self.c[k])
    }

    /// Partial derivative with per-variable orders `exps`.
    pub fn partial(&self, exps: &[u8]) -> f64 {
        let fact: f64 = exps.iter().map(|&e| factorial(e as usize)).product();
        self.coeff(exps) * fact
    }

    /// Partial derivative along the listed variables (repetition allowed,
    /// order irrelevant).
    pub fn partial_along(&self, vars: &[usize]) -> f64 {
        let mut e = vec![0u8; self.space.nvars];
        for &v in vars {
            e[v] += 1;
        }
        self.partial(&e)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    /// Exact derivative with respect to `var`; the top-degree coefficients of
    /// the result are unknown and set to zero.
    pub fn derivative(&self, var: usize) -> Jet {
        let mut out = vec![0.0; self.c.len()];
        for (k, &ck) in self.c.iter().enumerate() {
            if ck == 0.0 {
                continue;
            }
            if let Some(t) = self.space.dec[var][k] {
                out[t as usize] += ck * self.space.exps[k][var] as f64;
            }
        }
        Jet {
            space: self.space.clone(),
            c: out,
        }
    }

    /// Repeated derivative along `vars`.
    pub fn derivative_along(&self, vars: &[usize]) -> Jet {
        vars.iter().fold(self.clone(), |acc, &v| acc.derivative(v))
    }

    /// Truncate into a space of lower (or equal) degree with the same variables.
    pub fn reduce(&self, target: &Arc<JetSpace>) -> Jet {
        assert_eq!(target.nvars, self.space.nvars, "variable count mismatch");
        assert!(target.degree <= self.space.degree, "cannot raise degree");
        Jet {
            space: target.clone(),
            c: self.c[..target.len()].to_vec(),
        }
    }

    /// Divide by the increment of `var`, assuming every monomial free of `var`
    /// vanishes (a removable singularity). Loses one degree of accuracy.
    pub fn shift_divide(&self, var: usize) -> Jet {
        let mut out = vec![0.0; self.c.len()];
        for (k, e) in self.space.exps.iter().enumerate() {
            if e[var] == 0 {
                continue;
            }
            if let Some(t) = self.space.dec[var][k] {
                out[t as usize] += self.c[k];
            }
        }
        Jet {
            space: self.space.clone(),
            c: out,
        }
    }

    /// Substitute the increments of `args` (constant parts equal to this
    /// jet's base point) into this polynomial.
    pub fn compose(&self, args: &[Jet]) -> Jet {
        assert_eq!(args.len(), self.space.nvars, "argument count mismatch");
        if args.is_empty() {
            return Jet::scalar(self.c[0]);
        }
        let target = args[0].space.clone();
        let maxp = self.space.degree.min(target.degree);
        let incs: Vec<Jet> = args.iter().map(|a| a - a.value()).collect();
        let powers: Vec<Vec<Jet>> = incs
            .iter()
            .map(|h| {
                let mut p = vec![Jet::constant(&target, 1.0)];
                for k in 1..=maxp {
                    let next = &p[k - 1] * h;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Jet::constant(&target, 0.0);
        for (k, e) in self.space.exps.iter().enumerate() {
            let ck = self.c[k];
            if ck == 0.0 || self.space.degs[k] > target.degree {
                continue;
            }
            let mut term: Option<Jet> = None;
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    let p = &powers[v][ev as usize];
                    term = Some(match term {
                        None => p.clone(),
                        Some(t) => &t * p,
                    });
                }
            }
            match term {
                None => out.c[0] += ck,
                Some(t) => out.axpy(ck, &t),
            }
        }
        out
    }

    fn axpy(&mut self, a: f64, other: &Jet) {
        for (x, y) in self.c.iter_mut().zip(&other.c) {
            *x += a * y;
        }
    }

    /// `sum_k coeffs[k] * (self - value)^k`, i.e. composition with a
    /// univariate Taylor series about the current value.
    pub fn compose_series(&self, coeffs: &[f64]) -> Jet {
        let h = self - self.value();
        let top = coeffs.len().min(self.space.degree + 1);
        let mut acc = self.lift(coeffs[top - 1]);
        for k in (0..top - 1).rev() {
            acc = &acc * &h;
            acc.c[0] += coeffs[k];
        }
        acc
    }

    fn order(&self) -> usize {
        self.space.degree
    }

    pub fn recip(&self) -> Jet {
        let a = self.value();
        let coeffs: Vec<f64> = (0..=self.order())
            .map(|k| {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                s / a.powi(k as i32 + 1)
            })
            .collect();
        self.compose_series(&coeffs)
    }

    pub fn powf(&self, p: f64) -> Jet {
        let a = self.value();
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        let mut binom = 1.0;
        for k in 0..=self.order() {
            coeffs.push(binom * a.powf(p - k as f64));
            binom *= (p - k as f64) / (k as f64 + 1.0);
        }
        self.compose_series(&coeffs)
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn powi(&self, n: i32) -> Jet {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = self.lift(1.0);
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn exp(&self) -> Jet {
        let ea = self.value().exp();
        let coeffs: Vec<f64> = (0..=self.order()).map(|k| ea / factorial(k)).collect();
        self.compose_series(&coeffs)
    }

    pub fn ln(&self) -> Jet {
        let a = self.value();
        let coeffs: Vec<f64> = (0..=self.order())
            .map(|k| {
                if k == 0 {
                    a.ln()
                } else {
                    let s = if k % 2 == 1 { 1.0 } else { -1.0 };
                    s / (k as f64 * a.powi(k as i32))
                }
            })
            .collect();
        self.compose_series(&coeffs)
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [s, c, -s, -c];
        let coeffs: Vec<f64> = (0..=self.order())
            .map(|k| cycle[k % 4] / factorial(k))
            .collect();
        self.compose_series(&coeffs)
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [c, -s, -c, s];
        let coeffs: Vec<f64> = (0..=self.order())
            .map(|k| cycle[k % 4] / factorial(k))
            .collect();
        self.compose_series(&coeffs)
    }

    /// `|self|`, differentiated on the side of the current sign.
    pub fn abs(&self) -> Jet {
        if self.value() < 0.0 {
            -self
        } else {
            self.clone()
        }
    }

    /// `self^e` where the exponent may itself be a jet. Integer constant
    /// exponents use repeated products so that `0^2` stays smooth.
    pub fn pow(&self, e: &Jet) -> Jet {
        let ev = e.value();
        let exponent_is_constant = e.c[1..].iter().all(|&v| v == 0.0);
        if exponent_is_constant {
            if ev.fract() == 0.0 && ev.abs() <= 64.0 {
                return self.powi(ev as i32);
            }
            return self.powf(ev);
        }
        (e * &self.ln()).exp()
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

fn mul_into(out: &mut [f64], a: &Jet, b: &Jet) {
    let space = &a.space;
    for (i, &ai) in a.c.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for &(j, k) in &space.mul[i] {
            out[k as usize] += ai * b.c[j as usize];
        }
    }
}

fn check_same(a: &Jet, b: &Jet) {
    debug_assert!(
        Arc::ptr_eq(&a.space, &b.space),
        "jets from different spaces: ({}, {}) vs ({}, {})",
        a.space.nvars,
        a.space.degree,
        b.space.nvars,
        b.space.degree
    );
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        check_same(self, rhs);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect();
        Jet {
            space: self.space.clone(),
            c,
        }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        check_same(self, rhs);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect();
        Jet {
            space: self.space.clone(),
            c,
        }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        check_same(self, rhs);
        let mut c = vec![0.0; self.c.len()];
        mul_into(&mut c, self, rhs);
        Jet {
            space: self.space.clone(),
            c,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        self * &rhs.recip()
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            space: self.space.clone(),
            c: self.c.iter().map(|v| -v).collect(),
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        self.c.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut out = self.clone();
        out.c[0] += rhs;
        out
    }
}

impl Sub<f64> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        let mut out = self.clone();
        out.c[0] -= rhs;
        out
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        Jet {
            space: self.space.clone(),
            c: self.c.iter().map(|v| v * rhs).collect(),
        }
    }
}

impl Div<f64> for &Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self * (1.0 / rhs)
    }
}

impl Add<&Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        rhs + self
    }
}

impl Sub<&Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let mut out = -rhs;
        out.c[0] += self;
        out
    }
}

impl Mul<&Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        rhs * self
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&Jet> for f64 {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        &rhs.recip() * self
    }
}

// Owned-operand forwarding.
macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Jet> for &'a Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
        impl $tr<f64> for Jet {
            type Output = Jet;
            fn $m(self, rhs: f64) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet> for f64 {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Jet> for Jet {
    fn add_assign(&mut self, rhs: &Jet) {
        check_same(self, rhs);
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl AddAssign<Jet> for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self += &rhs;
    }
}

impl SubAssign<&Jet> for Jet {
    fn sub_assign(&mut self, rhs: &Jet) {
        check_same(self, rhs);
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl SubAssign<Jet> for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        *self -= &rhs;
    }
}

impl MulAssign<f64> for Jet {
    fn mul_assign(&mut self, rhs: f64) {
        self.c.iter_mut().for_each(|v| *v *= rhs);
    }
}

/// Euclidean inner product of two jet vectors.
pub fn dot(a: &[Jet], b: &[Jet]) -> Jet {
    assert_eq!(a.len(), b.len());
    let mut acc = a[0].zero_like();
    for (u, v) in a.iter().zip(b) {
        acc += u * v;
    }
    acc
}

/// Inner product of a jet vector with constant coefficients.
pub fn dot_const(a: &[Jet], w: &[f64]) -> Jet {
    let mut acc = a[0].zero_like();
    for (u, &c) in a.iter().zip(w) {
        if c != 0.0 {
            acc += u * c;
        }
    }
    acc
}

pub fn norm_sq(a: &[Jet]) -> Jet {
    dot(a, a)
}
