//! Interval propagation over the Gram entries.
//!
//! Each unknown `g_ab` carries a rational interval. Two rules tighten them
//! until nothing changes: the class equations `sum w_ab g_ab = c` (interval
//! arithmetic) and the 2x2 principal minors of the current Schur complement.
//! Unknowns are then fixed row by row, highest pivot first; once a pivot row
//! is fixed it is eliminated and the bounds on the remaining complement are
//! propagated again. Choices come from a short candidate list (the simplest
//! rational near the middle, the endpoints, nearby integers) and a bounded
//! depth-first search backs out of dead ends.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactarith::{rational_sqrt, BigRat};
use crate::multipoly::{Monomial, Polynomial};

const MAX_ROUNDS: usize = 60;
const SEARCH_BUDGET: usize = 2000;
const EXTRA_INTEGERS: usize = 4;
const SQRT_SCALE_BITS: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Interval {
    lo: Option<BigRat>,
    hi: Option<BigRat>,
}

impl Interval {
    fn full() -> Self {
        Interval { lo: None, hi: None }
    }

    #[cfg(test)]
    fn point(v: BigRat) -> Self {
        Interval {
            lo: Some(v.clone()),
            hi: Some(v),
        }
    }

    fn fixed(&self) -> Option<&BigRat> {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    fn clamp(&self, v: BigRat) -> BigRat {
        match (&self.lo, &self.hi) {
            (Some(l), _) if &v < l => l.clone(),
            (_, Some(h)) if &v > h => h.clone(),
            _ => v,
        }
    }

    // Smallest |v| over the interval.
    fn min_abs(&self) -> BigRat {
        match (&self.lo, &self.hi) {
            (Some(l), _) if l.is_positive() => l.clone(),
            (_, Some(h)) if h.is_negative() => -h,
            _ => BigRat::zero(),
        }
    }

    // Returns Err on an empty intersection, Ok(true) when something tightened.
    fn tighten(&mut self, lo: Option<BigRat>, hi: Option<BigRat>) -> Result<bool, ()> {
        let mut changed = false;
        if let Some(l) = lo {
            if self.lo.as_ref().is_none_or(|cur| &l > cur) {
                self.lo = Some(l);
                changed = true;
            }
        }
        if let Some(h) = hi {
            if self.hi.as_ref().is_none_or(|cur| &h < cur) {
                self.hi = Some(h);
                changed = true;
            }
        }
        if let (Some(l), Some(h)) = (&self.lo, &self.hi) {
            if l > h {
                return Err(());
            }
        }
        Ok(changed)
    }
}

// Upper bound for sqrt(x), exact when x is a rational square.
fn sqrt_upper(x: &BigRat) -> BigRat {
    if let Some(r) = rational_sqrt(x) {
        return r;
    }
    let scale = BigInt::one() << SQRT_SCALE_BITS;
    let nd = x.numer() * x.denom() * &scale * &scale;
    BigRat::new(nd.sqrt() + 1, x.denom() * &scale)
}

#[derive(Clone)]
struct Var {
    a: usize,
    b: usize,
    weight: BigRat,
}

// Unknown Gram entries `g_v`, and the Schur complement of the pivots taken so
// far, whose entries are `g_v + off_v` for indices not yet eliminated.
#[derive(Clone)]
struct System {
    vars: Vec<Var>,
    classes: Vec<(BigRat, Vec<usize>)>,
    pair: BTreeMap<(usize, usize), usize>,
    iv: Vec<Interval>,
    off: Vec<BigRat>,
    alive: Vec<bool>,
}

fn shift(x: &Option<BigRat>, by: &BigRat) -> Option<BigRat> {
    x.as_ref().map(|x| x + by)
}

impl System {
    fn var(&self, a: usize, b: usize) -> usize {
        self.pair[&(a.min(b), a.max(b))]
    }

    fn value(&self, v: usize) -> Option<BigRat> {
        self.iv[v].fixed().map(|g| g + &self.off[v])
    }

    fn tighten_schur(&mut self, v: usize, lo: Option<BigRat>, hi: Option<BigRat>) -> Result<bool, String> {
        let off = -&self.off[v];
        let (a, b) = (self.vars[v].a, self.vars[v].b);
        self.iv[v]
            .tighten(shift(&lo, &off), shift(&hi, &off))
            .map_err(|_| format!("no admissible value for entry ({a}, {b})"))
    }

    fn propagate(&mut self) -> Result<(), String> {
        for _ in 0..MAX_ROUNDS {
            let mut changed = false;
            for (c, ids) in &self.classes {
                for &v in ids {
                    let (mut lo, mut hi) = (Some(c.clone()), Some(c.clone()));
                    for &u in ids.iter().filter(|&&u| u != v) {
                        let w = &self.vars[u].weight;
                        let iv = &self.iv[u];
                        hi = hi.zip(iv.lo.as_ref()).map(|(h, l)| h - w * l);
                        lo = lo.zip(iv.hi.as_ref()).map(|(s, h)| s - w * h);
                    }
                    let w = &self.vars[v].weight;
                    let (lo, hi) = (lo.map(|x| x / w), hi.map(|x| x / w));
                    changed |= self.iv[v]
                        .tighten(lo, hi)
                        .map_err(|_| "class equation has no solution in the bounds".to_string())?;
                }
            }
            for v in 0..self.vars.len() {
                let (a, b) = (self.vars[v].a, self.vars[v].b);
                if !self.alive[a] || !self.alive[b] {
                    continue;
                }
                if a == b {
                    changed |= self.tighten_schur(v, Some(BigRat::zero()), None)?;
                    continue;
                }
                let (da, db) = (self.var(a, a), self.var(b, b));
                let hi_a = shift(&self.iv[da].hi, &self.off[da]);
                let hi_b = shift(&self.iv[db].hi, &self.off[db]);
                if let (Some(ha), Some(hb)) = (&hi_a, &hi_b) {
                    if ha.is_negative() || hb.is_negative() {
                        return Err(format!("negative diagonal at ({a}, {b})"));
                    }
                    let r = sqrt_upper(&(ha * hb));
                    changed |= self.tighten_schur(v, Some(-&r), Some(r))?;
                }
                let e = Interval {
                    lo: shift(&self.iv[v].lo, &self.off[v]),
                    hi: shift(&self.iv[v].hi, &self.off[v]),
                };
                let m = e.min_abs();
                if m.is_zero() {
                    continue;
                }
                let m2 = &m * &m;
                for (d_self, h_other) in [(da, &hi_b), (db, &hi_a)] {
                    if let Some(h) = h_other {
                        if h.is_zero() {
                            return Err(format!("entry ({a}, {b}) is nonzero next to a zero pivot"));
                        }
                        changed |= self.tighten_schur(d_self, Some(&m2 / h), None)?;
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
        Ok(())
    }

    // Values to try for `v`, most central first.
    fn candidates(&self, v: usize) -> Vec<BigRat> {
        let iv = &self.iv[v];
        let mut out = Vec::new();
        match (&iv.lo, &iv.hi) {
            (Some(l), Some(h)) => {
                let quarter = (h - l) / BigRat::from_integer(4.into());
                let mid = simplest_between(&(l + &quarter), &(h - &quarter));
                out.push(mid.clone());
                out.push(l.clone());
                out.push(h.clone());
                // nearby integers, closest to the middle first
                let center = mid.round();
                for step in 1..=EXTRA_INTEGERS as i64 {
                    for offset in [step, -step] {
                        let x = &center + BigRat::from_integer(offset.into());
                        if l <= &x && &x <= h {
                            out.push(x);
                        }
                    }
                }
            }
            (Some(l), None) if self.vars[v].a == self.vars[v].b => {
                let room = l.abs() + BigRat::one();
                out.push(simplest_between(&(l + &room / BigRat::from_integer(2.into())), &(l + &room)));
                out.push(l.clone());
            }
            _ => out.push(iv.clamp(BigRat::zero())),
        }
        let mut seen = Vec::new();
        out.retain(|x| {
            let fresh = !seen.contains(x);
            if fresh {
                seen.push(x.clone());
            }
            fresh
        });
        out
    }

    fn set(&mut self, v: usize, x: BigRat) -> Result<(), String> {
        self.iv[v]
            .tighten(Some(x.clone()), Some(x))
            .map_err(|_| "no admissible value".to_string())?;
        self.propagate()
    }

    // Eliminates pivots, highest first, until one has an unfixed entry in its
    // row; returns that entry, or None when every pivot is eliminated.
    fn advance(&mut self) -> Result<Option<usize>, String> {
        while let Some(piv) = (0..self.alive.len()).rev().find(|&i| self.alive[i]) {
            let lower: Vec<usize> = (0..piv).filter(|&j| self.alive[j]).collect();
            let row_vars = [self.var(piv, piv)].into_iter().chain(lower.iter().rev().map(|&j| self.var(piv, j)));
            if let Some(v) = row_vars.into_iter().find(|&v| self.iv[v].fixed().is_none()) {
                return Ok(Some(v));
            }
            self.eliminate(piv, &lower)?;
        }
        Ok(None)
    }

    fn eliminate(&mut self, piv: usize, lower: &[usize]) -> Result<(), String> {
        let d = self.value(self.var(piv, piv)).expect("fixed");
        let row: Vec<BigRat> = lower
            .iter()
            .map(|&j| self.value(self.var(piv, j)).expect("fixed"))
            .collect();
        if d.is_negative() {
            return Err(format!("negative pivot {d}"));
        }
        if d.is_zero() {
            if row.iter().any(|x| !x.is_zero()) {
                return Err("zero pivot with nonzero row".into());
            }
        } else {
            for (x, &i) in lower.iter().enumerate() {
                for (y, &j) in lower.iter().enumerate().skip(x) {
                    let v = self.var(i, j);
                    let upd = &row[x] * &row[y] / &d;
                    self.off[v] -= upd;
                }
            }
        }
        self.alive[piv] = false;
        self.propagate()
    }
}

// Depth-first over candidate values; `budget` bounds the number of nodes.
fn search(mut sys: System, budget: &mut usize) -> Result<System, String> {
    let v = match sys.advance()? {
        None => return Ok(sys),
        Some(v) => v,
    };
    let mut last = String::new();
    for x in sys.candidates(v) {
        if *budget == 0 {
            return Err("search budget exhausted".into());
        }
        *budget -= 1;
        let mut next = sys.clone();
        match next.set(v, x).and_then(|_| search(next, budget)) {
            Ok(done) => return Ok(done),
            Err(e) => last = e,
        }
    }
    Err(last)
}

// The rational with the smallest denominator in `[a, b]`.
fn simplest_between(a: &BigRat, b: &BigRat) -> BigRat {
    if !a.is_positive() && !b.is_negative() {
        return BigRat::zero();
    }
    if b.is_negative() {
        return -simplest_between(&-b, &-a);
    }
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let next = &fl + BigRat::one();
    if &next <= b {
        return next;
    }
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

/// A Gram matrix for `p` over `basis`, or the reason propagation gave up.
///
/// Pivots are eliminated in descending monomial order, as in the final
/// `L D L^T` check, with bounds propagated through each Schur complement.
pub(super) fn propagated_gram(
    p: &Polynomial,
    basis: &[Monomial],
    classes: &BTreeMap<Monomial, Vec<(usize, usize)>>,
) -> Result<Vec<BigRat>, String> {
    let k = basis.len();
    let mut vars = Vec::new();
    let mut pair = BTreeMap::new();
    let mut sys_classes = Vec::new();
    for (gamma, pairs) in classes.iter().rev() {
        let mut ids = Vec::new();
        for &(a, b) in pairs {
            pair.insert((a, b), vars.len());
            ids.push(vars.len());
            vars.push(Var {
                a,
                b,
                weight: BigRat::from_integer(if a == b { 1 } else { 2 }.into()),
            });
        }
        sys_classes.push((p.coeff(gamma), ids));
    }
    let n = vars.len();
    let mut sys = System {
        vars,
        classes: sys_classes,
        pair,
        iv: vec![Interval::full(); n],
        off: vec![BigRat::zero(); n],
        alive: vec![true; k],
    };
    sys.propagate()?;
    let mut budget = SEARCH_BUDGET;
    let sys = search(sys, &mut budget)?;
    let mut gram = vec![BigRat::zero(); k * k];
    for (v, var) in sys.vars.iter().enumerate() {
        let x = sys.iv[v].fixed().cloned().expect("every entry is fixed by elimination");
        gram[var.a * k + var.b] = x.clone();
        gram[var.b * k + var.a] = x;
    }
    Ok(gram)
}
