use crate::gauge::{compute_a0_padded, compute_a_padded, PaddedPair, VectorPotential};
use crate::spectral::{derivative, Axis, ComplexField, FieldPair, PaddedField, C64};

struct PaddedVector {
    a1: PaddedField,
    a2: PaddedField,
}

impl PaddedVector {
    fn new(a: &VectorPotential) -> PaddedVector {
        PaddedVector {
            a1: a.a1.padded(),
            a2: a.a2.padded(),
        }
    }

    /// Dealiased `A · B`, padded again for the next product.
    fn dot(&self, other: &PaddedVector) -> PaddedField {
        self.a1.mul(&other.a1).add(&self.a2.mul(&other.a2)).truncate().padded()
    }
}

/// `Δf` with the symbol `−|ξ|²` used by the free propagator.
fn laplacian_true(f: &ComplexField) -> ComplexField {
    let grid = f.grid();
    f.map_spectrum(|i, c| -grid.mode(i).norm_sqr() * c)
}

/// Right-hand side of the equation for `w = u − v` when `u` and `v` both
/// solve the gauged system:
///
/// ```text
/// ∂_t w_j = iΔw_j − 2∇·(A[u,u] w_j) − 2A[u+v,w]·∇v_j
///         − i(A₀[u,u] + |A[u,u]|²) w_j
///         − i(A₀[u+v,w] + (A[u,u] + A[v,v])·A[u+v,w]) v_j
///         + cubic difference
/// ```
///
/// Each term is built from the bilinear potentials and cubic terms are nested
/// dealiased products, so the result agrees with the difference of the two
/// right-hand sides up to roundoff.
pub fn difference_rhs(u: &FieldPair, v: &FieldPair) -> FieldPair {
    let w = u.sub(v);
    let s = u.add(v);
    let (pu, pv, pw, ps) = (
        PaddedPair::new(u),
        PaddedPair::new(v),
        PaddedPair::new(&w),
        PaddedPair::new(&s),
    );
    let a_u = PaddedVector::new(&compute_a_padded(&pu, &pu));
    let a_v = PaddedVector::new(&compute_a_padded(&pv, &pv));
    let a_x = PaddedVector::new(&compute_a_padded(&ps, &pw));
    let a0_u = compute_a0_padded(&pu, &pu).padded();
    let a0_x = compute_a0_padded(&ps, &pw).padded();
    let a_sum = PaddedVector {
        a1: a_u.a1.add(&a_v.a1),
        a2: a_u.a2.add(&a_v.a2),
    };
    let potential_w = a0_u.add(&a_u.dot(&a_u));
    let potential_v = a0_x.add(&a_sum.dot(&a_x));
    let minus_i = C64::new(0.0, -1.0);

    let component = |j: usize| -> ComplexField {
        let k = 3 - j;
        let (uj, uk) = (pu.component(j), pu.component(k));
        let (vj, vk) = (pv.component(j), pv.component(k));
        let (wj, wk) = (pw.component(j), pw.component(k));
        let (sj, sk) = (ps.component(j), ps.component(k));
        let vj_field = v.component(j);

        let flux = |a: &PaddedField| a.mul(wj).truncate();
        let divergence = derivative(&flux(&a_u.a1), Axis::X1)
            .add(&derivative(&flux(&a_u.a2), Axis::X2))
            .scale_real(-2.0);

        let transport = a_x
            .a1
            .mul(&derivative(vj_field, Axis::X1).padded())
            .add(&a_x.a2.mul(&derivative(vj_field, Axis::X2).padded()))
            .scale(C64::new(-2.0, 0.0));
        let potentials = potential_w
            .mul(wj)
            .add(&potential_v.mul(vj))
            .scale(minus_i);
        // 4[Im(u_kū_j) w_k + ½ Im((u_k + v_k) w̄_j + w_k (ū_j + v̄_j)) v_k]
        let twist_u = uk.mul_conj(uj).im().truncate().padded();
        let twist_x = sk
            .mul_conj(wj)
            .add(&wk.mul_conj(sj))
            .im()
            .scale(C64::new(0.5, 0.0))
            .truncate()
            .padded();
        let cubic = twist_u
            .mul(wk)
            .add(&twist_x.mul(vk))
            .scale(C64::new(4.0, 0.0));

        let local = transport.add(&potentials).add(&cubic).truncate();
        laplacian_true(w.component(j))
            .scale(C64::i())
            .add(&divergence)
            .add(&local)
    };
    FieldPair::new(component(1), component(2))
}
