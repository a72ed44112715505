//! Complex, quaternion and octonion scalars.
//!
//! Octonion coefficients are stored in the basis order
//! `(1, i, j, k, l, il, jl, kl)`. Two products are provided: [`omul_table`]
//! expands bilinearly over the basis multiplication table, [`omul_closed`]
//! evaluates the eight-line coordinate formula. They are written independently
//! so each can serve as the other's oracle. The `*` operator uses the closed form.

use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Complex = num_complex::Complex64;

/// `a + b·i` shorthand.
#[inline]
pub const fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Quaternion `w + x·i + y·j + z·k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub fn from_complex(c: Complex) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }

    #[inline]
    pub fn conj(self) -> Self {
        qconj(self)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        qnorm(self)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

/// Hamilton product, `ij = k`, `jk = i`, `ki = j`.
#[inline]
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion {
        w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    }
}

#[inline]
pub fn qconj(q: Quaternion) -> Quaternion {
    Quaternion::new(q.w, -q.x, -q.y, -q.z)
}

#[inline]
pub fn qnorm(q: Quaternion) -> f64 {
    libm::sqrt(q.norm_sqr())
}

/// Cayley–Dickson split `q = p₁ + p₂·j` with `p₁ = w + x·i`, `p₂ = y + z·i`.
#[inline]
pub fn cd_split(q: Quaternion) -> (Complex, Complex) {
    (c64(q.w, q.x), c64(q.y, q.z))
}

#[inline]
pub fn cd_join((p1, p2): (Complex, Complex)) -> Quaternion {
    Quaternion::new(p1.re, p1.im, p2.re, p2.im)
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        qmul(self, o)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

/// Octonion with coefficients of `(1, i, j, k, l, il, jl, kl)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Octonion {
    pub c: [f64; 8],
}

/// Index of each basis unit in [`Octonion::c`].
pub mod unit {
    pub const ONE: usize = 0;
    pub const I: usize = 1;
    pub const J: usize = 2;
    pub const K: usize = 3;
    pub const L: usize = 4;
    pub const IL: usize = 5;
    pub const JL: usize = 6;
    pub const KL: usize = 7;

    pub const NAMES: [&str; 8] = ["1", "i", "j", "k", "l", "il", "jl", "kl"];
}

/// `BASIS_TABLE[r][c] = (sign, index)` means `e_r · e_c = sign · e_index`.
/// Row order and column order are `1, i, j, k, l, il, jl, kl`.
#[rustfmt::skip]
pub const BASIS_TABLE: [[(i8, u8); 8]; 8] = [
    //  1        i        j        k        l        il       jl       kl
    [(1, 0),  (1, 1),  (1, 2),  (1, 3),  (1, 4),  (1, 5),  (1, 6),  (1, 7)],  // 1
    [(1, 1),  (-1, 0), (1, 3),  (-1, 2), (1, 5),  (-1, 4), (-1, 7), (1, 6)],  // i
    [(1, 2),  (-1, 3), (-1, 0), (1, 1),  (1, 6),  (1, 7),  (-1, 4), (-1, 5)], // j
    [(1, 3),  (1, 2),  (-1, 1), (-1, 0), (1, 7),  (-1, 6), (1, 5),  (-1, 4)], // k
    [(1, 4),  (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1),  (1, 2),  (1, 3)],  // l
    [(1, 5),  (1, 4),  (-1, 7), (1, 6),  (-1, 1), (-1, 0), (-1, 3), (1, 2)],  // il
    [(1, 6),  (1, 7),  (1, 4),  (-1, 5), (-1, 2), (1, 3),  (-1, 0), (-1, 1)], // jl
    [(1, 7),  (-1, 6), (1, 5),  (1, 4),  (-1, 3), (-1, 2), (1, 1),  (-1, 0)], // kl
];

impl Octonion {
    pub const ZERO: Self = Self { c: [0.0; 8] };
    pub const ONE: Self = Self::basis(unit::ONE);
    pub const I: Self = Self::basis(unit::I);
    pub const J: Self = Self::basis(unit::J);
    pub const K: Self = Self::basis(unit::K);
    pub const L: Self = Self::basis(unit::L);
    pub const IL: Self = Self::basis(unit::IL);
    pub const JL: Self = Self::basis(unit::JL);
    pub const KL: Self = Self::basis(unit::KL);

    #[inline]
    pub const fn new(c: [f64; 8]) -> Self {
        Self { c }
    }

    pub const fn basis(idx: usize) -> Self {
        let mut c = [0.0; 8];
        c[idx] = 1.0;
        Self { c }
    }

    #[inline]
    pub fn from_real(r: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = r;
        Self { c }
    }

    #[inline]
    pub fn from_complex(z: Complex) -> Self {
        let mut c = [0.0; 8];
        c[0] = z.re;
        c[1] = z.im;
        Self { c }
    }

    /// Embeds `q` as the `l`-free octonion.
    #[inline]
    pub fn from_quaternion(q: Quaternion) -> Self {
        Self {
            c: [q.w, q.x, q.y, q.z, 0.0, 0.0, 0.0, 0.0],
        }
    }

    /// Builds `q₁ + q₂·l`.
    #[inline]
    pub fn from_quaternion_pair(q1: Quaternion, q2: Quaternion) -> Self {
        Self {
            c: [q1.w, q1.x, q1.y, q1.z, q2.w, q2.x, q2.y, q2.z],
        }
    }

    /// The quaternion part `q₁` of `q₁ + q₂·l`.
    #[inline]
    pub fn quaternion_part(self) -> Quaternion {
        Quaternion::new(self.c[0], self.c[1], self.c[2], self.c[3])
    }

    /// The coefficient quaternion `q₂` of `q₁ + q₂·l`.
    #[inline]
    pub fn l_part(self) -> Quaternion {
        Quaternion::new(self.c[4], self.c[5], self.c[6], self.c[7])
    }

    /// Complex number times an octonion unit, `z·u` (left multiplication).
    #[inline]
    pub fn complex_times(z: Complex, u: Octonion) -> Self {
        Self::from_complex(z) * u
    }

    #[inline]
    pub fn conj(self) -> Self {
        oconj(self)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    #[inline]
    pub fn norm(self) -> f64 {
        onorm(self)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Self { c }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(self) -> f64 {
        self.c.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }
}

/// Octonion product by bilinear expansion over [`BASIS_TABLE`].
pub fn omul_table(a: Octonion, b: Octonion) -> Octonion {
    let mut out = [0.0; 8];
    for (r, row) in BASIS_TABLE.iter().enumerate() {
        if a.c[r] == 0.0 {
            continue;
        }
        for (col, &(sign, idx)) in row.iter().enumerate() {
            out[idx as usize] += f64::from(sign) * a.c[r] * b.c[col];
        }
    }
    Octonion { c: out }
}

/// Octonion product by the coordinate formula.
#[rustfmt::skip]
pub fn omul_closed(o1: Octonion, o2: Octonion) -> Octonion {
    let [a1, b1, c1, d1, e1, f1, g1, h1] = o1.c;
    let [a2, b2, c2, d2, e2, f2, g2, h2] = o2.c;
    Octonion { c: [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2 - e1 * e2 - f1 * f2 - g1 * g2 - h1 * h2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2 + e1 * f2 - f1 * e2 + h1 * g2 - g1 * h2,
        a1 * c2 + c1 * a2 + d1 * b2 - b1 * d2 + e1 * g2 - g1 * e2 + f1 * h2 - h1 * f2,
        a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2 + e1 * h2 - h1 * e2 + g1 * f2 - f1 * g2,
        a1 * e2 + e1 * a2 + f1 * b2 - b1 * f2 + g1 * c2 - c1 * g2 + h1 * d2 - d1 * h2,
        a1 * f2 + f1 * a2 + b1 * e2 - e1 * b2 + h1 * c2 - c1 * h2 + d1 * g2 - g1 * d2,
        a1 * g2 + g1 * a2 + b1 * h2 - h1 * b2 + c1 * e2 - e1 * c2 + f1 * d2 - d1 * f2,
        a1 * h2 + h1 * a2 + g1 * b2 - b1 * g2 + c1 * f2 - f1 * c2 + d1 * e2 - e1 * d2,
    ] }
}

#[inline]
pub fn oconj(o: Octonion) -> Octonion {
    let mut c = o.c;
    c[1..].iter_mut().for_each(|v| *v = -*v);
    Octonion { c }
}

#[inline]
pub fn onorm(o: Octonion) -> f64 {
    libm::sqrt(o.norm_sqr())
}

/// Left-associated triple product `(a·b)·c`.
#[inline]
pub fn triple(a: Octonion, b: Octonion, c: Octonion) -> Octonion {
    (a * b) * c
}

/// Right-associated triple product `a·(b·c)`. Only meaningful for comparing
/// against [`triple`]; octonions are not associative.
#[inline]
pub fn triple_right(a: Octonion, b: Octonion, c: Octonion) -> Octonion {
    a * (b * c)
}

/// Left-associated product of any number of factors.
pub fn product_left(factors: &[Octonion]) -> Octonion {
    let mut it = factors.iter();
    let first = it.next().copied().unwrap_or(Octonion::ONE);
    it.fold(first, |acc, &f| acc * f)
}

impl Add for Octonion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        c.iter_mut().zip(o.c).for_each(|(a, b)| *a += b);
        Self { c }
    }
}

impl Sub for Octonion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        let mut c = self.c;
        c.iter_mut().zip(o.c).for_each(|(a, b)| *a -= b);
        Self { c }
    }
}

impl Neg for Octonion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Octonion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        omul_closed(self, o)
    }
}

impl AddAssign for Octonion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Octonion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl From<Quaternion> for Octonion {
    fn from(q: Quaternion) -> Self {
        Self::from_quaternion(q)
    }
}

impl From<Complex> for Octonion {
    fn from(z: Complex) -> Self {
        Self::from_complex(z)
    }
}
