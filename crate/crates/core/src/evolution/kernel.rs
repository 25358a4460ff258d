//! Spectral-space evaluation of the gauged nonlinearity with a fixed FFT
//! budget. Cubic terms are nested quadratic products, so every product is
//! quadratic and the `3n/2 × 3n/2` grid is enough to make it alias free after
//! truncation to `|k_axis| < n/2`.

use crate::spectral::{forward_in_place, inverse_in_place, Grid, C64};

const NONE: usize = usize::MAX;

/// Index tables and symbols for one grid.
pub(crate) struct Kernel {
    pub grid: Grid,
    m: usize,
    /// Padded index of every non-Nyquist mode (`NONE` for Nyquist modes).
    pad_index: Vec<usize>,
    /// `(n-grid index, padded index of k, padded index of −k)` for kept modes.
    keep: Vec<(usize, usize, usize)>,
    /// Odd wavevector per mode.
    pub odd: Vec<[f64; 2]>,
    /// `|ξ|²` with the true wavevector.
    pub xi_sqr: Vec<f64>,
    /// `A₁` and `A₂` multipliers acting on the density `m`.
    a_symbol: Vec<[C64; 2]>,
    /// `Σ R_jR_k` weights for `(d₁₁, d₁₂, d₂₂)`.
    rr: Vec<[f64; 3]>,
}

impl Kernel {
    pub fn new(grid: Grid) -> Kernel {
        let n = grid.n();
        let m = 3 * n / 2;
        let half = (n / 2) as i64;
        let padded = |k1: i64, k2: i64| {
            k2.rem_euclid(m as i64) as usize * m + k1.rem_euclid(m as i64) as usize
        };
        let mut pad_index = vec![NONE; n * n];
        let mut keep = Vec::new();
        let mut odd = Vec::with_capacity(n * n);
        let mut xi_sqr = Vec::with_capacity(n * n);
        let mut a_symbol = Vec::with_capacity(n * n);
        let mut rr = Vec::with_capacity(n * n);
        for (index, mode) in grid.modes().enumerate() {
            let [k1, k2] = mode.k;
            if k1.abs() < half && k2.abs() < half {
                pad_index[index] = padded(k1, k2);
                keep.push((index, padded(k1, k2), padded(-k1, -k2)));
            }
            let r2 = mode.odd_norm_sqr();
            let [x1, x2] = mode.odd;
            odd.push(mode.odd);
            xi_sqr.push(mode.norm_sqr());
            if r2 == 0.0 {
                a_symbol.push([C64::default(); 2]);
                rr.push([0.0; 3]);
            } else {
                a_symbol.push([C64::new(0.0, -2.0 * x2 / r2), C64::new(0.0, 2.0 * x1 / r2)]);
                rr.push([-x1 * x1 / r2, -2.0 * x1 * x2 / r2, -x2 * x2 / r2]);
            }
        }
        Kernel {
            grid,
            m,
            pad_index,
            keep,
            odd,
            xi_sqr,
            a_symbol,
            rr,
        }
    }

    /// Samples on the padded grid of the field with spectrum `spec`.
    pub fn pad(&self, spec: &[C64]) -> Vec<C64> {
        let mut data = vec![C64::default(); self.m * self.m];
        for (i, &c) in spec.iter().enumerate() {
            let p = self.pad_index[i];
            if p != NONE {
                data[p] = c;
            }
        }
        inverse_in_place(&mut data, self.m);
        data
    }

    fn forward(&self, mut padded: Vec<C64>) -> Vec<C64> {
        forward_in_place(&mut padded, self.m);
        padded
    }

    /// Truncated spectrum of padded samples.
    pub fn truncate(&self, padded: Vec<C64>) -> Vec<C64> {
        let data = self.forward(padded);
        let mut out = vec![C64::default(); self.grid.len()];
        for &(i, p, _) in &self.keep {
            out[i] = data[p];
        }
        out
    }

    /// Truncated spectra of the real and imaginary parts of padded samples.
    pub fn truncate_parts(&self, padded: Vec<C64>) -> (Vec<C64>, Vec<C64>) {
        let data = self.forward(padded);
        let mut re = vec![C64::default(); self.grid.len()];
        let mut im = vec![C64::default(); self.grid.len()];
        for &(i, p, q) in &self.keep {
            let (a, b) = (data[p], data[q].conj());
            re[i] = (a + b) * 0.5;
            im[i] = (a - b) * C64::new(0.0, -0.5);
        }
        (re, im)
    }

    /// `∂_t u_j` minus the dispersive part `iΔu_j`, in spectral form.
    pub fn msm_nonlinear(&self, u: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let len = self.grid.len();
        let pu = [self.pad(&u[0]), self.pad(&u[1])];
        // 2ū₁u₂ = d₁₂ + i·m and 2|u₁|² + 2i|u₂|² = d₁₁ + i·d₂₂
        let cross: Vec<C64> = pu[0].iter().zip(&pu[1]).map(|(a, b)| 2.0 * a.conj() * b).collect();
        let diag: Vec<C64> = pu[0]
            .iter()
            .zip(&pu[1])
            .map(|(a, b)| C64::new(2.0 * a.norm_sqr(), 2.0 * b.norm_sqr()))
            .collect();
        let (d12, m) = self.truncate_parts(cross);
        let (d11, d22) = self.truncate_parts(diag);
        let mut a_packed = vec![C64::default(); len];
        for i in 0..len {
            let [s1, s2] = self.a_symbol[i];
            a_packed[i] = s1 * m[i] + C64::i() * s2 * m[i];
        }
        let a_padded = self.pad(&a_packed);
        let a_sqr = self.truncate(a_padded.iter().map(|a| C64::new(a.norm_sqr(), 0.0)).collect());
        // potential V = A₀ + |A|² in the real part, Im(u₂ū₁) = m/2 in the imaginary part
        let mut packed = vec![C64::default(); len];
        for i in 0..len {
            let [r11, r12, r22] = self.rr[i];
            let a0 = 2.0 * (r11 * d11[i] + r12 * d12[i] + r22 * d22[i]) + d11[i] + d22[i];
            packed[i] = a0 + a_sqr[i] + C64::i() * (0.5 * m[i]);
        }
        let packed = self.pad(&packed);
        let mut out = Vec::with_capacity(2);
        for j in 0..2 {
            let other = &pu[1 - j];
            let uj = &pu[j];
            let sign = if j == 0 { 4.0 } else { -4.0 };
            let mut flux1 = Vec::with_capacity(uj.len());
            let mut flux2 = Vec::with_capacity(uj.len());
            let mut local = Vec::with_capacity(uj.len());
            for x in 0..uj.len() {
                let (a1, a2) = (a_padded[x].re, a_padded[x].im);
                let (potential, twist) = (packed[x].re, packed[x].im);
                flux1.push(a1 * uj[x]);
                flux2.push(a2 * uj[x]);
                // 4 Im(u₂ū₁) u₂ for j = 1 and 4 Im(u₁ū₂) u₁ for j = 2
                local.push(C64::new(0.0, -potential) * uj[x] + sign * twist * other[x]);
            }
            let (f1, f2, g) = (self.truncate(flux1), self.truncate(flux2), self.truncate(local));
            out.push(
                (0..len)
                    .map(|i| {
                        let [x1, x2] = self.odd[i];
                        C64::new(0.0, -2.0) * (x1 * f1[i] + x2 * f2[i]) + g[i]
                    })
                    .collect(),
            );
        }
        out
    }
}

/// Integrating-factor ("Lawson") classical RK4 for `∂_t û = −i|ξ|² û + N(t, û)`.
///
/// The free propagator is applied exactly, so with `N = 0` the step is the
/// exact Schrödinger flow for any `h`, including `h < 0`.
pub(crate) struct Lawson {
    half: Vec<C64>,
    h: f64,
}

impl Lawson {
    pub fn new(xi_sqr: &[f64], h: f64) -> Lawson {
        Lawson {
            half: xi_sqr
                .iter()
                .map(|&r2| C64::from_polar(1.0, -r2 * h / 2.0))
                .collect(),
            h,
        }
    }

    fn propagate(&self, u: &[Vec<C64>]) -> Vec<Vec<C64>> {
        u.iter()
            .map(|c| c.iter().zip(&self.half).map(|(a, e)| a * e).collect())
            .collect()
    }

    pub fn step(
        &self,
        t: f64,
        u: &mut Vec<Vec<C64>>,
        n: &mut impl FnMut(f64, &[Vec<C64>]) -> Vec<Vec<C64>>,
    ) {
        let h = self.h;
        let combine = |a: &[Vec<C64>], s: f64, b: &[Vec<C64>]| -> Vec<Vec<C64>> {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + s * q).collect())
                .collect()
        };
        let k1 = n(t, u);
        let k2 = n(t + h / 2.0, &self.propagate(&combine(u, h / 2.0, &k1)));
        let eu = self.propagate(u);
        let k3 = n(t + h / 2.0, &combine(&eu, h / 2.0, &k2));
        let e2u = self.propagate(&eu);
        let k4 = n(t + h, &combine(&e2u, h, &self.propagate(&k3)));
        // E²(u + h/6 k1) + h/3 E(k2 + k3) + h/6 k4
        let first = self.propagate(&self.propagate(&combine(u, h / 6.0, &k1)));
        let middle = self.propagate(&combine(&k2, 1.0, &k3));
        for c in 0..u.len() {
            for i in 0..u[c].len() {
                u[c][i] = first[c][i] + h / 3.0 * middle[c][i] + h / 6.0 * k4[c][i];
            }
        }
    }
}
