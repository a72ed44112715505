//! Special-case product rules for octonions built from complex numbers and
//! the units `j`, `l`, `jl`, as executable identities.
//!
//! Every unparenthesized product is evaluated left to right, exactly like
//! [`crate::algebra::product_left`]; brackets in a name mark explicit
//! regrouping. Each identity is checked on random complex operands drawn
//! uniformly from the unit square.

use alloc::vec::Vec;

use crate::algebra::{omul_closed, omul_table, product_left, qmul, Complex, Octonion, Quaternion};
use crate::diag::Family;
use crate::random::SeededRng;

/// Random operands for one evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub p: Complex,
    pub q: Complex,
    pub r: Complex,
    pub s: Complex,
    pub t: Complex,
    /// Real scalars, for the rule that only holds with real middle factors.
    pub c: f64,
    pub d: f64,
    pub x: Quaternion,
    pub y: Quaternion,
}

impl Sample {
    pub fn draw(rng: &mut SeededRng) -> Self {
        Self {
            p: rng.complex(),
            q: rng.complex(),
            r: rng.complex(),
            s: rng.complex(),
            t: rng.complex(),
            c: rng.uniform(),
            d: rng.uniform(),
            x: rng.quaternion(),
            y: rng.quaternion(),
        }
    }
}

/// A named equality `lhs = rhs` over random samples.
#[derive(Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub eval: fn(&Sample) -> (Octonion, Octonion),
}

impl core::fmt::Debug for Identity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    /// Worst `|lhs − rhs| / max(|lhs|, |rhs|)`; for a non-identity, the
    /// largest relative gap seen.
    pub worst: f64,
    pub trials: usize,
}

fn z(v: Complex) -> Octonion {
    Octonion::from_complex(v)
}

fn zu(v: Complex, u: Octonion) -> Octonion {
    Octonion::complex_times(v, u)
}

/// `a + b·j`.
fn cd(a: Complex, b: Complex) -> Octonion {
    Octonion::from_quaternion(crate::algebra::cd_join((a, b)))
}

fn jv(v: Complex) -> Octonion {
    zu(v, Octonion::J)
}

fn lv(v: Complex) -> Octonion {
    zu(v, Octonion::L)
}

fn jlv(v: Complex) -> Octonion {
    zu(v, Octonion::JL)
}

fn rel_gap(a: Octonion, b: Octonion) -> f64 {
    let scale = f64::max(a.norm(), b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Evaluates every identity on `trials` samples from `seed`, sharing the
/// sample stream so that all identities see the same operands.
pub fn check(ids: &[Identity], trials: usize, seed: u64) -> Vec<Outcome> {
    let mut rng = SeededRng::new(seed);
    let samples: Vec<Sample> = (0..trials).map(|_| Sample::draw(&mut rng)).collect();
    ids.iter()
        .map(|id| Outcome {
            name: id.name,
            worst: samples
                .iter()
                .map(|s| {
                    let (a, b) = (id.eval)(s);
                    rel_gap(a, b)
                })
                .fold(0.0, f64::max),
            trials,
        })
        .collect()
}

/// Single-element rules following from the multiplication table.
pub fn unit_products() -> Vec<Identity> {
    vec_of(&[
        ("(p+qj)[(r+sj)l] = [(r+sj)l]conj(p+qj)", |s| {
            let a = cd(s.p, s.q);
            let b = cd(s.r, s.s) * Octonion::L;
            (a * b, b * a.conj())
        }),
        ("(p+qj)[(r+sj)jl] = [(r+sj)jl]conj(p+qj)", |s| {
            let a = cd(s.p, s.q);
            let b = cd(s.r, s.s) * Octonion::JL;
            (a * b, b * a.conj())
        }),
        ("(pl)q(rl) = -p conj(q) conj(r)", |s| {
            (
                product_left(&[lv(s.p), z(s.q), lv(s.r)]),
                z(-s.p * s.q.conj() * s.r.conj()),
            )
        }),
        ("(p jl)q(r jl) = -p conj(q) conj(r)", |s| {
            (
                product_left(&[jlv(s.p), z(s.q), jlv(s.r)]),
                z(-s.p * s.q.conj() * s.r.conj()),
            )
        }),
        ("(pl)(qj)(rl) = p q conj(r) j", |s| {
            (
                product_left(&[lv(s.p), jv(s.q), lv(s.r)]),
                jv(s.p * s.q * s.r.conj()),
            )
        }),
        ("(p jl)(qj)(r jl) = p q conj(r) j", |s| {
            (
                product_left(&[jlv(s.p), jv(s.q), jlv(s.r)]),
                jv(s.p * s.q * s.r.conj()),
            )
        }),
        ("(pl)q(r jl) = conj(p) q conj(r) j", |s| {
            (
                product_left(&[lv(s.p), z(s.q), jlv(s.r)]),
                jv(s.p.conj() * s.q * s.r.conj()),
            )
        }),
        ("(p jl)q(rl) = -conj(p) q conj(r) j", |s| {
            (
                product_left(&[jlv(s.p), z(s.q), lv(s.r)]),
                jv(-s.p.conj() * s.q * s.r.conj()),
            )
        }),
        ("(pl)(qj)(r jl) = conj(p) conj(q) conj(r)", |s| {
            (
                product_left(&[lv(s.p), jv(s.q), jlv(s.r)]),
                z(s.p.conj() * s.q.conj() * s.r.conj()),
            )
        }),
        ("(p jl)(qj)(rl) = -conj(p) conj(q) conj(r)", |s| {
            (
                product_left(&[jlv(s.p), jv(s.q), lv(s.r)]),
                z(-s.p.conj() * s.q.conj() * s.r.conj()),
            )
        }),
    ])
}

/// Association order of the triples in [`unit_products`]: with a complex
/// middle factor and equal outer units both orders agree.
pub fn unit_product_association() -> Vec<Identity> {
    vec_of(&[
        ("((pl)q)(rl) = (pl)(q(rl))", |s| {
            right_vs_left(lv(s.p), z(s.q), lv(s.r))
        }),
        ("((p jl)q)(r jl) = (p jl)(q(r jl))", |s| {
            right_vs_left(jlv(s.p), z(s.q), jlv(s.r))
        }),
    ])
}

/// The remaining triples of [`unit_products`] depend on association order;
/// e.g. `(pl)((qj)(rl)) = conj(p)·q·r·j` while `((pl)(qj))(rl) = p·q·conj(r)·j`.
pub fn unit_product_association_breaks() -> Vec<Identity> {
    vec_of(&[
        ("((pl)(qj))(rl) vs (pl)((qj)(rl))", |s| {
            right_vs_left(lv(s.p), jv(s.q), lv(s.r))
        }),
        ("((p jl)(qj))(r jl) vs (p jl)((qj)(r jl))", |s| {
            right_vs_left(jlv(s.p), jv(s.q), jlv(s.r))
        }),
        ("((pl)q)(r jl) vs (pl)(q(r jl))", |s| {
            right_vs_left(lv(s.p), z(s.q), jlv(s.r))
        }),
        ("((p jl)q)(rl) vs (p jl)(q(rl))", |s| {
            right_vs_left(jlv(s.p), z(s.q), lv(s.r))
        }),
        ("((pl)(qj))(r jl) vs (pl)((qj)(r jl))", |s| {
            right_vs_left(lv(s.p), jv(s.q), jlv(s.r))
        }),
        ("((p jl)(qj))(rl) vs (p jl)((qj)(rl))", |s| {
            right_vs_left(jlv(s.p), jv(s.q), lv(s.r))
        }),
    ])
}

fn right_vs_left(a: Octonion, b: Octonion, c: Octonion) -> (Octonion, Octonion) {
    ((a * b) * c, a * (b * c))
}

/// Quaternion–`l` commutation: `l·x = conj(x)·l` and `x(yl) = (yl)conj(x)`.
pub fn l_commutation() -> Vec<Identity> {
    vec_of(&[
        ("l x = conj(x) l", |s| {
            let x = Octonion::from_quaternion(s.x);
            (Octonion::L * x, x.conj() * Octonion::L)
        }),
        ("x(yl) = (yl)conj(x)", |s| {
            let x = Octonion::from_quaternion(s.x);
            let yl = Octonion::from_quaternion(s.y) * Octonion::L;
            (x * yl, yl * x.conj())
        }),
    ])
}

/// Regrouping rules for longer products.
pub fn regroupings() -> Vec<Identity> {
    vec_of(&[
        ("p[(ql)r(sl)] = p(ql)r(sl)", |s| {
            (
                z(s.p) * product_left(&[lv(s.q), z(s.r), lv(s.s)]),
                product_left(&[z(s.p), lv(s.q), z(s.r), lv(s.s)]),
            )
        }),
        ("p[(ql)(rj)(sl)] = p(ql)(rj)(sl)", |s| {
            (
                z(s.p) * product_left(&[lv(s.q), jv(s.r), lv(s.s)]),
                product_left(&[z(s.p), lv(s.q), jv(s.r), lv(s.s)]),
            )
        }),
        ("(pj)[(ql)r(sl)] = (pj)(conj(q)l)r(conj(s)l)", |s| {
            (
                jv(s.p) * product_left(&[lv(s.q), z(s.r), lv(s.s)]),
                product_left(&[jv(s.p), lv(s.q.conj()), z(s.r), lv(s.s.conj())]),
            )
        }),
        ("(pj)[(ql)(rj)(sl)] = (pj)(conj(q)l)(rj)(conj(s)l)", |s| {
            (
                jv(s.p) * product_left(&[lv(s.q), jv(s.r), lv(s.s)]),
                product_left(&[jv(s.p), lv(s.q.conj()), jv(s.r), lv(s.s.conj())]),
            )
        }),
        ("(pl)[(ql)r(sl)](tl) = [(pl)(ql)]r[(sl)(tl)]", |s| {
            (
                product_left(&[lv(s.p), product_left(&[lv(s.q), z(s.r), lv(s.s)]), lv(s.t)]),
                product_left(&[lv(s.p) * lv(s.q), z(s.r), lv(s.s) * lv(s.t)]),
            )
        }),
        ("(pl)[qrs](tl) = [(pl)q]r[s(tl)]", |s| {
            (
                product_left(&[lv(s.p), z(s.q * s.r * s.s), lv(s.t)]),
                product_left(&[lv(s.p) * z(s.q), z(s.r), z(s.s) * lv(s.t)]),
            )
        }),
        (
            "(pl)[(ql)(rj)(sl)](tl) = [(pl)(conj(q)l)](rj)[(sl)(conj(t)l)]",
            |s| {
                (
                    product_left(&[lv(s.p), product_left(&[lv(s.q), jv(s.r), lv(s.s)]), lv(s.t)]),
                    product_left(&[lv(s.p) * lv(s.q.conj()), jv(s.r), lv(s.s) * lv(s.t.conj())]),
                )
            },
        ),
        ("(pl)[c(rj)d](sl) = [(pl)c](rj)[d(sl)], c,d real", |s| {
            let (c, d) = (Octonion::from_real(s.c), Octonion::from_real(s.d));
            (
                product_left(&[lv(s.p), product_left(&[c, jv(s.r), d]), lv(s.s)]),
                product_left(&[lv(s.p) * c, jv(s.r), d * lv(s.s)]),
            )
        }),
        ("(pl)(ql)(rl) = (pl)[(ql)(rl)]", |s| {
            (
                product_left(&[lv(s.p), lv(s.q), lv(s.r)]),
                lv(s.p) * (lv(s.q) * lv(s.r)),
            )
        }),
        ("(p jl)(ql)(rl) = (p jl)[(conj(q)l)(conj(r)l)]", |s| {
            (
                product_left(&[jlv(s.p), lv(s.q), lv(s.r)]),
                jlv(s.p) * (lv(s.q.conj()) * lv(s.r.conj())),
            )
        }),
        (
            "(tl)(p+qj)(r+sj) = (tl)[pr - conj(q)s + (conj(p)s + qr)j]",
            |s| {
                (
                    product_left(&[lv(s.t), cd(s.p, s.q), cd(s.r, s.s)]),
                    lv(s.t) * cd(s.p * s.r - s.q.conj() * s.s, s.p.conj() * s.s + s.q * s.r),
                )
            },
        ),
    ])
}

/// Regroupings that are *not* valid; each must show a clear gap on some
/// sample.
pub fn invalid_regroupings() -> Vec<Identity> {
    vec_of(&[
        ("(pl)(ql)(rj) vs (pl)[(ql)(rj)]", |s| {
            (
                product_left(&[lv(s.p), lv(s.q), jv(s.r)]),
                lv(s.p) * (lv(s.q) * jv(s.r)),
            )
        }),
        ("(pj)(ql)(rl) vs (pj)[(ql)(rl)]", |s| {
            (
                product_left(&[jv(s.p), lv(s.q), lv(s.r)]),
                jv(s.p) * (lv(s.q) * lv(s.r)),
            )
        }),
        ("(p jl)(ql)(rl) vs (p jl)[(ql)(rl)]", |s| {
            (
                product_left(&[jlv(s.p), lv(s.q), lv(s.r)]),
                jlv(s.p) * (lv(s.q) * lv(s.r)),
            )
        }),
        ("(tl)(p+qj)(r+sj) vs (tl)[(p+qj)(r+sj)]", |s| {
            (
                product_left(&[lv(s.t), cd(s.p, s.q), cd(s.r, s.s)]),
                lv(s.t) * (cd(s.p, s.q) * cd(s.r, s.s)),
            )
        }),
        ("(pl)[c(rj)d](sl) vs [(pl)c](rj)[d(sl)], c,d complex", |s| {
            let (c, d) = (z(s.q), z(s.t));
            (
                product_left(&[lv(s.p), product_left(&[c, jv(s.r), d]), lv(s.s)]),
                product_left(&[lv(s.p) * c, jv(s.r), d * lv(s.s)]),
            )
        }),
    ])
}

fn sandwich_rule_with(u: Octonion, s: &Sample) -> (Octonion, Octonion) {
    let lhs = product_left(&[zu(s.p, u), cd(s.q, s.r), zu(s.s, u)]);
    let rhs = cd(-s.p * s.q.conj() * s.s.conj(), s.p * s.r * s.s.conj());
    (lhs, rhs)
}

/// `(p𝐩)(q + rj)(s𝐩) = −p·conj(q)·conj(s) + p·r·conj(s)·j` for one family.
pub fn sandwich_rule(family: Family) -> Identity {
    match family {
        Family::L => Identity {
            name: "sandwich rule, unit l",
            eval: |s| sandwich_rule_with(Family::L.unit(), s),
        },
        Family::Jl => Identity {
            name: "sandwich rule, unit jl",
            eval: |s| sandwich_rule_with(Family::Jl.unit(), s),
        },
        Family::Mixed => Identity {
            name: "sandwich rule, unit (l+jl)/sqrt2",
            eval: |s| sandwich_rule_with(Family::Mixed.unit(), s),
        },
        Family::Il => Identity {
            name: "sandwich rule, unit il",
            eval: |s| sandwich_rule_with(Family::Il.unit(), s),
        },
        Family::MixedIl => Identity {
            name: "sandwich rule, unit (l+il)/sqrt2",
            eval: |s| sandwich_rule_with(Family::MixedIl.unit(), s),
        },
    }
}

type Eval = fn(&Sample) -> (Octonion, Octonion);

fn vec_of(items: &[(&'static str, Eval)]) -> Vec<Identity> {
    items
        .iter()
        .map(|&(name, eval)| Identity { name, eval })
        .collect()
}

/// Worst `|table(a,b) − closed(a,b)| / (|a||b|)` over `pairs` random pairs.
pub fn table_vs_closed(pairs: usize, seed: u64) -> f64 {
    let mut rng = SeededRng::new(seed);
    (0..pairs)
        .map(|_| {
            let (a, b) = (rng.octonion(), rng.octonion());
            (omul_table(a, b) - omul_closed(a, b)).norm() / (a.norm() * b.norm())
        })
        .fold(0.0, f64::max)
}

/// Worst `| |ab| − |a||b| | / (|a||b|)` for both product implementations.
pub fn composition_law(pairs: usize, seed: u64) -> f64 {
    let mut rng = SeededRng::new(seed);
    (0..pairs)
        .map(|_| {
            let (a, b) = (rng.octonion(), rng.octonion());
            let want = a.norm() * b.norm();
            let t = (omul_table(a, b).norm() - want).abs();
            let c = (omul_closed(a, b).norm() - want).abs();
            f64::max(t, c) / want
        })
        .fold(0.0, f64::max)
}

/// Worst gap between the quaternion product and the octonion product of
/// embedded quaternions.
pub fn embedding_agreement(pairs: usize, seed: u64) -> f64 {
    let mut rng = SeededRng::new(seed);
    (0..pairs)
        .map(|_| {
            let (a, b) = (rng.quaternion(), rng.quaternion());
            let want = Octonion::from_quaternion(qmul(a, b));
            let got = omul_table(Octonion::from_quaternion(a), Octonion::from_quaternion(b));
            (got - want).norm() / (a.norm() * b.norm())
        })
        .fold(0.0, f64::max)
}

/// `i·(j·l)` against `(i·j)·l`, the textbook associator witness.
pub fn associator_witness() -> f64 {
    (Octonion::I * (Octonion::J * Octonion::L) - (Octonion::I * Octonion::J) * Octonion::L).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_products_holds() {
        for o in check(&unit_products(), 200, 1) {
            assert!(o.worst <= 1e-13, "{} {}", o.name, o.worst);
        }
        for o in check(&unit_product_association(), 200, 2) {
            assert!(o.worst <= 1e-13, "{} {}", o.name, o.worst);
        }
        for o in check(&unit_product_association_breaks(), 50, 2) {
            assert!(o.worst > 1e-3, "{} {}", o.name, o.worst);
        }
    }

    #[test]
    fn regroupings_and_remark() {
        for o in check(&regroupings(), 200, 3) {
            assert!(o.worst <= 1e-13, "{} {}", o.name, o.worst);
        }
        for o in check(&invalid_regroupings(), 50, 4) {
            assert!(o.worst > 1e-3, "{} {}", o.name, o.worst);
        }
    }

    #[test]
    fn sandwich_rule_all_families() {
        let ids: Vec<_> = Family::GUARANTEED
            .iter()
            .chain(&Family::PROBES)
            .map(|&f| sandwich_rule(f))
            .collect();
        for o in check(&ids, 200, 5) {
            assert!(o.worst <= 1e-13, "{} {}", o.name, o.worst);
        }
    }

    #[test]
    fn product_cross_checks() {
        assert!(table_vs_closed(1000, 6) <= 1e-14);
        assert!(composition_law(1000, 7) <= 1e-12);
        assert!(embedding_agreement(1000, 8) <= 1e-14);
        assert!(associator_witness() > 1.0);
        for o in check(&l_commutation(), 200, 9) {
            assert!(o.worst <= 1e-14, "{} {}", o.name, o.worst);
        }
    }
}
