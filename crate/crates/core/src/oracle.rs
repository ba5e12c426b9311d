//! Coordinate-level reference computation for conformally rescaled
//! Heisenberg structures.
//!
//! Nothing here touches the jet engine: frame fields are concrete vector
//! fields on R³, and every derivative is a central finite difference. The
//! Reeb field, the Levi-normalized (1,0) field and the dual coframe are
//! recovered numerically from `θ̂ = e^{2f}(dt + 2x dy − 2y dx)`.
//!
//! The fourth-order operators nest up to six difference levels. Roundoff grows
//! like `ε/hᵏ` at depth `k` and truncation compounds level by level, so the
//! arithmetic is double-double and the stencil is fourth order.

use crate::exact::poly::Poly;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use twofloat::TwoFloat;

pub type D = TwoFloat;
pub type C = Complex<TwoFloat>;
pub type Pt = [D; 3];
pub type Vector = [C; 3];

/// Default difference step for the fourth-order central stencil.
pub const STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    Z,
    Zbar,
    T,
}

type Key = [u64; 6];

fn key(p: &Pt) -> Key {
    let b = |x: D| (x.hi().to_bits(), x.lo().to_bits());
    let (a0, a1) = b(p[0]);
    let (b0, b1) = b(p[1]);
    let (c0, c1) = b(p[2]);
    [a0, a1, b0, b1, c0, c1]
}

/// Nested stencils revisit the same points many times.
#[derive(Default)]
struct Memo {
    zhat: RefCell<HashMap<Key, Vector>>,
    reeb: RefCell<HashMap<Key, Vector>>,
    coframe: RefCell<HashMap<Key, [Vector; 3]>>,
    omega_zbar: RefCell<HashMap<Key, C>>,
    omega_t: RefCell<HashMap<Key, C>>,
    a1b1b: RefCell<HashMap<Key, C>>,
}

fn memo<T: Copy>(m: &RefCell<HashMap<Key, T>>, p: &Pt, f: impl FnOnce() -> T) -> T {
    let k = key(p);
    if let Some(v) = m.borrow().get(&k) {
        return *v;
    }
    let v = f();
    m.borrow_mut().insert(k, v);
    v
}

pub struct CoordinateOracle {
    f: Vec<([i32; 3], D)>,
    h: D,
    memo: Memo,
}

fn dd(x: f64) -> D {
    D::from(x)
}

fn cr(x: D) -> C {
    Complex::new(x, D::zero())
}

fn i_c() -> C {
    Complex::new(D::zero(), dd(1.0))
}

/// Value of a real rational polynomial in double-double.
fn poly_terms(p: &Poly) -> Vec<([i32; 3], D)> {
    p.terms()
        .map(|(m, c)| {
            assert!(
                c.is_real() && c.re2.is_zero() && c.im2.is_zero(),
                "oracle requires a real rational polynomial"
            );
            let n = c.re.numer().to_f64().expect("numerator fits f64");
            let d = c.re.denom().to_f64().expect("denominator fits f64");
            ([m[0] as i32, m[1] as i32, m[2] as i32], dd(n) / dd(d))
        })
        .collect()
}

pub fn to_pt(p: [f64; 3]) -> Pt {
    [dd(p[0]), dd(p[1]), dd(p[2])]
}

pub fn to_c64(z: C) -> num_complex::Complex64 {
    num_complex::Complex64::new(z.re.hi() + z.re.lo(), z.im.hi() + z.im.lo())
}

fn inverse3(m: &[[C; 3]; 3]) -> [[C; 3]; 3] {
    let cof =
        |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    let mut out = [[C::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = adj[i][j] / det;
        }
    }
    out
}

fn pair(a: &Vector, v: &Vector) -> C {
    a[0] * v[0] + a[1] * v[1] + a[2] * v[2]
}

fn conj_v(v: Vector) -> Vector {
    [v[0].conj(), v[1].conj(), v[2].conj()]
}

impl CoordinateOracle {
    pub fn new(f: &Poly) -> Self {
        Self::with_step(f, STEP)
    }

    pub fn with_step(f: &Poly, h: f64) -> Self {
        Self {
            f: poly_terms(f),
            h: dd(h),
            memo: Memo::default(),
        }
    }

    pub fn f(&self, p: &Pt) -> D {
        let mut acc = D::zero();
        for (m, c) in &self.f {
            let mut v = *c;
            for k in 0..3 {
                v *= p[k].powi(m[k]);
            }
            acc += v;
        }
        acc
    }

    /// `[g(p−2h) − 8g(p−h) + 8g(p+h) − g(p+2h)] / 12h` along axis `k`.
    fn diff<const N: usize>(&self, g: &dyn Fn(&Pt) -> [C; N], p: &Pt, k: usize) -> [C; N] {
        let at = |s: f64| {
            let mut q = *p;
            q[k] += self.h * dd(s);
            g(&q)
        };
        let (m2, m1, p1, p2) = (at(-2.0), at(-1.0), at(1.0), at(2.0));
        let den = cr(self.h * dd(12.0));
        let eight = cr(dd(8.0));
        let mut out = [C::zero(); N];
        for i in 0..N {
            out[i] = (m2[i] - p2[i] + eight * (p1[i] - m1[i])) / den;
        }
        out
    }

    fn diff_scalar(&self, u: &dyn Fn(&Pt) -> C, p: &Pt, k: usize) -> C {
        self.diff(&|q: &Pt| [u(q)], p, k)[0]
    }

    /// `θ̂` in the coordinate coframe (dx, dy, dt).
    pub fn theta(&self, p: &Pt) -> Vector {
        let e = (self.f(p) * dd(2.0)).exp();
        [cr(-dd(2.0) * p[1] * e), cr(dd(2.0) * p[0] * e), cr(e)]
    }

    /// `Ω_ij = ∂_i θ̂_j − ∂_j θ̂_i`.
    pub fn dtheta(&self, p: &Pt) -> [[C; 3]; 3] {
        let jac: Vec<Vector> = (0..3)
            .map(|k| self.diff(&|q: &Pt| self.theta(q), p, k))
            .collect();
        let mut om = [[C::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                om[i][j] = jac[i][j] - jac[j][i];
            }
        }
        om
    }

    fn two_form(om: &[[C; 3]; 3], x: &Vector, y: &Vector) -> C {
        let mut acc = C::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += om[i][j] * x[i] * y[j];
            }
        }
        acc
    }

    /// Reeb field: the kernel of `dθ̂` normalized by `θ̂(T̂) = 1`.
    pub fn reeb(&self, p: &Pt) -> Vector {
        memo(&self.memo.reeb, p, || {
            let om = self.dtheta(p);
            let w = [om[1][2], om[2][0], om[0][1]];
            let s = pair(&self.theta(p), &w);
            [w[0] / s, w[1] / s, w[2] / s]
        })
    }

    /// The standard (1,0) field of the flat structure.
    pub fn z1_flat(p: &Pt) -> Vector {
        let r = dd(2.0).sqrt();
        [
            cr(dd(1.0) / (dd(2.0) * r)),
            Complex::new(D::zero(), -dd(1.0) / (dd(2.0) * r)),
            Complex::new(p[1] / r, p[0] / r),
        ]
    }

    /// Positive real multiple of `Z₁` with `dθ̂(Ẑ, Ẑ̄) = i`.
    pub fn zhat(&self, p: &Pt) -> Vector {
        memo(&self.memo.zhat, p, || {
            let z = Self::z1_flat(p);
            let om = self.dtheta(p);
            let m = (Self::two_form(&om, &z, &conj_v(z)) / i_c()).re;
            let lam = cr(dd(1.0) / m.sqrt());
            [z[0] * lam, z[1] * lam, z[2] * lam]
        })
    }

    pub fn field(&self, dir: Dir, p: &Pt) -> Vector {
        match dir {
            Dir::Z => self.zhat(p),
            Dir::Zbar => conj_v(self.zhat(p)),
            Dir::T => self.reeb(p),
        }
    }

    /// Rows: `θ̂`, `θ̂¹`, `θ̂¹̄`, dual to `(T̂, Ẑ, Ẑ̄)`.
    pub fn coframe(&self, p: &Pt) -> [Vector; 3] {
        memo(&self.memo.coframe, p, || {
            let t = self.reeb(p);
            let z = self.zhat(p);
            let zb = conj_v(z);
            let m = [
                [t[0], z[0], zb[0]],
                [t[1], z[1], zb[1]],
                [t[2], z[2], zb[2]],
            ];
            inverse3(&m)
        })
    }

    pub fn apply(&self, v: &Vector, u: &dyn Fn(&Pt) -> C, p: &Pt) -> C {
        (0..3).map(|k| v[k] * self.diff_scalar(u, p, k)).sum()
    }

    pub fn bracket(&self, a: Dir, b: Dir, p: &Pt) -> Vector {
        let x = self.field(a, p);
        let y = self.field(b, p);
        let dy: Vec<Vector> = (0..3)
            .map(|j| self.diff(&|q: &Pt| self.field(b, q), p, j))
            .collect();
        let dx: Vec<Vector> = (0..3)
            .map(|j| self.diff(&|q: &Pt| self.field(a, q), p, j))
            .collect();
        let mut out = [C::zero(); 3];
        for k in 0..3 {
            for j in 0..3 {
                out[k] += x[j] * dy[j][k] - y[j] * dx[j][k];
            }
        }
        out
    }

    /// `ω₁¹(Ẑ̄) = dθ̂¹(Ẑ, Ẑ̄) = −θ̂¹([Ẑ, Ẑ̄])`.
    pub fn omega_zbar(&self, p: &Pt) -> C {
        memo(&self.memo.omega_zbar, p, || {
            -pair(&self.coframe(p)[1], &self.bracket(Dir::Z, Dir::Zbar, p))
        })
    }

    pub fn omega_z(&self, p: &Pt) -> C {
        -self.omega_zbar(p).conj()
    }

    /// `ω₁¹(T̂) = θ̂¹([T̂, Ẑ])`.
    pub fn omega_t(&self, p: &Pt) -> C {
        memo(&self.memo.omega_t, p, || {
            pair(&self.coframe(p)[1], &self.bracket(Dir::T, Dir::Z, p))
        })
    }

    pub fn omega(&self, dir: Dir, p: &Pt) -> C {
        match dir {
            Dir::Z => self.omega_z(p),
            Dir::Zbar => self.omega_zbar(p),
            Dir::T => self.omega_t(p),
        }
    }

    /// `A₁̄₁̄ = dθ̂¹(T̂, Ẑ̄) = −θ̂¹([T̂, Ẑ̄])`.
    pub fn a1b1b(&self, p: &Pt) -> C {
        memo(&self.memo.a1b1b, p, || {
            -pair(&self.coframe(p)[1], &self.bracket(Dir::T, Dir::Zbar, p))
        })
    }

    pub fn a11(&self, p: &Pt) -> C {
        self.a1b1b(p).conj()
    }

    /// `W = dω₁¹(Ẑ, Ẑ̄)`.
    pub fn webster(&self, p: &Pt) -> C {
        let z = self.zhat(p);
        let zb = conj_v(z);
        let a = self.apply(&z, &|q: &Pt| self.omega_zbar(q), p);
        let b = self.apply(&zb, &|q: &Pt| self.omega_z(q), p);
        let br = self.bracket(Dir::Z, Dir::Zbar, p);
        let cf = self.coframe(p);
        let om = self.omega_z(p) * pair(&cf[1], &br)
            + self.omega_zbar(p) * pair(&cf[2], &br)
            + self.omega_t(p) * pair(&cf[0], &br);
        a - b - om
    }

    /// Covariant derivative of a component with the given charge
    /// (number of lower 1 minus lower 1̄ indices).
    pub fn cov(&self, u: &dyn Fn(&Pt) -> C, charge: i32, dir: Dir, p: &Pt) -> C {
        let v = self.field(dir, p);
        let mut out = self.apply(&v, u, p);
        if charge != 0 {
            out -= cr(dd(charge as f64)) * self.omega(dir, p) * u(p);
        }
        out
    }

    pub fn f_scalar(&self) -> impl Fn(&Pt) -> C + '_ {
        move |q: &Pt| cr(self.f(q))
    }

    pub fn sublaplacian(&self, u: &dyn Fn(&Pt) -> C, p: &Pt) -> C {
        let u1 = |q: &Pt| self.cov(u, 0, Dir::Z, q);
        let u1b = |q: &Pt| self.cov(u, 0, Dir::Zbar, q);
        self.cov(&u1, 1, Dir::Zbar, p) + self.cov(&u1b, -1, Dir::Z, p)
    }

    /// `P₁u = u_{1̄11} + i A₁₁ u_{1̄}`.
    pub fn p1(&self, u: &dyn Fn(&Pt) -> C, p: &Pt) -> C {
        let u1b = |q: &Pt| self.cov(u, 0, Dir::Zbar, q);
        let u1b1 = |q: &Pt| self.cov(&u1b, -1, Dir::Z, q);
        self.cov(&u1b1, 0, Dir::Z, p) + i_c() * self.a11(p) * u1b(p)
    }

    /// `P̄₁̄u = u_{11̄1̄} − i A₁̄₁̄ u_1`.
    pub fn p1bar(&self, u: &dyn Fn(&Pt) -> C, p: &Pt) -> C {
        let u1 = |q: &Pt| self.cov(u, 0, Dir::Z, q);
        let u11b = |q: &Pt| self.cov(&u1, 1, Dir::Zbar, q);
        self.cov(&u11b, 0, Dir::Zbar, p) - i_c() * self.a1b1b(p) * u1(p)
    }

    /// `P₀u = ½[(P₁u)_{,1̄} + (P̄₁̄u)_{,1}]`.
    pub fn p0(&self, u: &dyn Fn(&Pt) -> C, p: &Pt) -> C {
        let pu = |q: &Pt| self.p1(u, q);
        let pbu = |q: &Pt| self.p1bar(u, q);
        (self.cov(&pu, 1, Dir::Zbar, p) + self.cov(&pbu, -1, Dir::Z, p)) * cr(dd(0.5))
    }
}

/// `|a − b| ≤ tol·max(1, |a|)`.
pub fn agrees(a: num_complex::Complex64, b: num_complex::Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(1.0)
}
