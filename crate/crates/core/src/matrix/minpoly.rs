//! Minimal polynomial from Krylov sequences of the standard basis vectors.
//!
//! `mu_A` is the lcm over `e_i` of the minimal polynomial of the sequence
//! `e_i, A e_i, A^2 e_i, ...`. Once a set of cyclic subspaces has been
//! collected, their sum `W` is A-invariant and annihilated by the running
//! lcm, so any `e_i` already in `W` contributes nothing and is skipped.

use super::Mat;
use crate::field::Field;
use crate::poly::Poly;

/// Row echelon basis with unit pivots.
struct Echelon<F: Field> {
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces `v` in place and returns the coefficient used for each basis row.
    fn reduce(&self, field: &F, v: &mut [F::Elem]) -> Vec<F::Elem> {
        let mut used = Vec::with_capacity(self.rows.len());
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if !field.is_zero(&c) {
                for (x, r) in v.iter_mut().zip(row) {
                    if !field.is_zero(r) {
                        *x = field.sub(x, &field.mul(&c, r));
                    }
                }
            }
            used.push(c);
        }
        used
    }

    /// Inserts an already-reduced nonzero vector; returns the scaling applied.
    fn insert_reduced(&mut self, field: &F, mut v: Vec<F::Elem>) -> F::Elem {
        let pivot = v.iter().position(|x| !field.is_zero(x)).expect("nonzero vector");
        let s = field.inv(&v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = field.mul(x, &s);
        }
        self.rows.push((pivot, v));
        s
    }

    fn contains(&self, field: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    fn add(&mut self, field: &F, v: &[F::Elem]) {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        if w.iter().any(|x| !field.is_zero(x)) {
            self.insert_reduced(field, w);
        }
    }
}

impl<F: Field> Mat<F> {
    /// Monic minimal polynomial of `v` under `self`, plus the Krylov vectors
    /// `v, Av, ..., A^{d-1} v` spanning the cyclic subspace.
    pub fn krylov_minimal_polynomial(&self, v: &[F::Elem]) -> (Poly<F>, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let mut basis = Echelon::<F>::new();
        // For each basis row, its expression as a polynomial in A applied to v.
        let mut exprs: Vec<Vec<F::Elem>> = Vec::new();
        let mut krylov = Vec::new();
        let mut power = v.to_vec();
        loop {
            let k = krylov.len();
            let mut w = power.clone();
            let used = basis.reduce(f, &mut w);
            let mut expr = vec![f.zero(); k + 1];
            expr[k] = f.one();
            for (c, e) in used.iter().zip(&exprs) {
                if f.is_zero(c) {
                    continue;
                }
                for (x, y) in expr.iter_mut().zip(e) {
                    *x = f.sub(x, &f.mul(c, y));
                }
            }
            if w.iter().all(|x| f.is_zero(x)) {
                return (Poly::new(f.clone(), expr), krylov);
            }
            let s = basis.insert_reduced(f, w);
            exprs.push(expr.into_iter().map(|x| f.mul(&x, &s)).collect());
            let next = self.mul_vec(&power);
            krylov.push(std::mem::replace(&mut power, next));
        }
    }

    /// Monic polynomial of least degree annihilating `self`.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        let f = &self.field;
        let n = self.n;
        let mut mu = Poly::one(f.clone());
        let mut span = Echelon::<F>::new();
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            if span.contains(f, &e) {
                continue;
            }
            let (local, krylov) = self.krylov_minimal_polynomial(&e);
            mu = mu.lcm(&local).expect("nonzero polynomials");
            for v in &krylov {
                span.add(f, v);
            }
        }
        mu
    }
}
