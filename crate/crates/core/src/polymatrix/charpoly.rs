
use super::SymbolicMatrix;
use crate::exactarith::BigRat;
use crate::multipoly::{RationalFunction, UnivarPoly};

/// `det(tI - A)` by Faddeev-LeVerrier; every division is by a small integer.
pub fn charpoly(a: &SymbolicMatrix) -> UnivarPoly {
    let n = a.dim();
    let nvars = a.nvars();
    let mut c = vec![RationalFunction::zero(nvars); n + 1];
    c[n] = RationalFunction::one(nvars);
    let mut m = SymbolicMatrix::zero(n, nvars);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = a.mul(&m).expect("square");
        let shift = c[n - k + 1].clone();
        if !shift.is_zero() {
            for i in 0..n {
                let v = m.get(i, i) + &shift;
                m.set(i, i, v);
            }
        }
        let tr = a.mul(&m).expect("square").trace();
        c[n - k] = tr.scale(&-BigRat::new(1.into(), (k as i64).into()));
    }
    debug_assert!(!c[n].is_zero());
    UnivarPoly::new(nvars, c)
}
