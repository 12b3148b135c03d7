//! Closed-form coefficient formulas, generic over the scalar type so the
//! same code runs on rationals and on rational functions of a vanishing
//! generator.

use super::{Label, SolutionId, Transcription};
use crate::equations::{ParamSet, Prefactor};
use crate::error::{Error, Result};
use crate::qalg::{q_pochhammer, BasisDescriptor, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm<T: Scalar> {
    pub prefactor: T,
    pub basis: BasisDescriptor<T>,
    pub coeffs: Vec<T>,
}

struct Ctx<'a, T: Scalar> {
    p: &'a ParamSet<T>,
    q: T,
    s: T,
    /// q^{λ+α₁}
    big_q: T,
    /// (q;q)_k for k ≤ N
    qfac: Vec<T>,
}

impl<'a, T: Scalar> Ctx<'a, T> {
    fn new(p: &'a ParamSet<T>, n: usize) -> Self {
        let q = p.q.clone();
        let mut qfac = vec![T::one()];
        let mut qk = T::one();
        for _ in 0..n {
            qk = qk * q.clone();
            let last = qfac.last().unwrap().clone();
            qfac.push(last * (T::one() - qk.clone()));
        }
        Self {
            p,
            s: p.s.clone(),
            big_q: p.lam_al1(),
            q,
            qfac,
        }
    }

    fn poch(&self, a: &T, n: usize) -> T {
        q_pochhammer(a, &self.q, n)
    }

    fn qpow(&self, e: i64) -> T {
        self.q.pow_i(e)
    }

    /// 1/x, or a degenerate-parameter error naming the factor.
    fn inv(&self, x: T, name: &str, n: usize) -> Result<T> {
        if x.is_zero() {
            Err(Error::Degenerate(format!("{name} at n={n}")))
        } else {
            Ok(x.recip())
        }
    }

    /// 1/(a;q)_n with the factor named in errors.
    fn inv_poch(&self, a: &T, n: usize, name: &str) -> Result<T> {
        self.inv(self.poch(a, n), &format!("({name};q)_n"), n)
    }

    /// 1/((q;q)_k (q;q)_{n−k}); never zero for admissible q.
    fn binom_den(&self, n: usize, k: usize) -> T {
        (self.qfac[k].clone() * self.qfac[n - k].clone()).recip()
    }
}

fn sign<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

fn tri(k: usize) -> i64 {
    (k * (k + 1) / 2) as i64
}

/// c_n = zⁿ·q^{quad·n(n−1)/2}·∏(aᵢ;q)ₙ / (∏(bⱼ;q)ₙ·(q;q)ₙ), n ≤ N; the
/// shape of every single-sum catalog entry.
pub fn hyper_terms<T: Scalar>(
    numer: &[T],
    denom: &[(T, &str)],
    q: &T,
    z: &T,
    quad: i64,
    n_max: usize,
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = T::one();
    out.push(c.clone());
    for n in 0..n_max {
        // ratio c_{n+1}/c_n
        let qn = q.pow_i(n as i64);
        let mut num = z.clone() * q.pow_i(quad * n as i64);
        for a in numer {
            num = num * (T::one() - a.clone() * qn.clone());
        }
        let mut den = T::one() - qn.clone() * q.clone();
        for (b, name) in denom {
            let f = T::one() - b.clone() * qn.clone();
            if f.is_zero() {
                return Err(Error::Degenerate(format!("({name};q)_n at n={}", n + 1)));
            }
            den = den * f;
        }
        if den.is_zero() {
            return Err(Error::Degenerate(format!("(q;q)_n at n={}", n + 1)));
        }
        c = c * num / den;
        out.push(c.clone());
    }
    Ok(out)
}

/// Evaluates one catalog entry (prefactor, basis and coefficients).
pub fn closed_form<T: Scalar>(
    id: &SolutionId,
    p: &ParamSet<T>,
    n_max: usize,
    tr: Transcription,
) -> Result<ClosedForm<T>> {
    if id.label.is_gauge_product() {
        return Err(Error::NotResidualVerifiable(id.to_string()));
    }
    let cx = Ctx::new(p, n_max);
    let (q, s, bq) = (cx.q.clone(), cx.s.clone(), cx.big_q.clone());
    let one = T::one;
    let (i, ip) = id.indices();
    let t = |k: u8| p.t(k).clone();
    let prefactor = match (id.label, tr) {
        (Label::T22ii, Transcription::AsPrinted) => Prefactor::PosAlpha1.scale(p)?,
        _ => id.label.prefactor().scale(p)?,
    };
    let md = || BasisDescriptor::monomial_desc(q.clone());

    // double-sum entries: c_n = outer(n)·Σ_k term(n, k)
    let double = |outer: &dyn Fn(usize) -> Result<T>, term: &dyn Fn(usize, usize) -> Result<T>| -> Result<Vec<T>> {
        (0..=n_max)
            .map(|n| {
                let mut acc = T::zero();
                for k in 0..=n {
                    acc = acc + term(n, k)?;
                }
                Ok(outer(n)? * acc)
            })
            .collect()
    };

    let (basis, coeffs) = match id.label {
        Label::P21i => {
            let (h1, h2, l1, l2) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let r = q.clone() * p.al1.clone() / p.alpha2()?.clone();
            let (u2, u1) = (bq.clone() * l2.clone() / h2, bq.clone() * l1.clone() / h1);
            let (w1, w2) = (l1 * t(1), l2 * t(2));
            let c = double(
                &|n| Ok(s.pow_i(n as i64) * cx.poch(&bq, n) * cx.inv_poch(&r, n, "q·a1/a2")?),
                &|n, k| {
                    Ok(cx.poch(&u2, k)
                        * cx.poch(&u1, n - k)
                        * cx.binom_den(n, k)
                        * w1.pow_i(k as i64)
                        * w2.pow_i((n - k) as i64))
                },
            )?;
            (md(), c)
        }
        Label::P21ii => {
            let (hi, hip, li) = (p.h(i)?.clone(), p.h(ip)?.clone(), p.l(i)?.clone());
            let c = hyper_terms(
                &[bq.clone(), p.lam.clone() * p.alpha2()?.clone()],
                &[
                    (q.clone() * hi / li.clone(), "q·A_i/L_i"),
                    (q.clone() * hip * t(ip) / (li.clone() * t(i)), "q·A_i'·t_i'/(L_i·t_i)"),
                ],
                &q,
                &q,
                0,
                n_max,
            )?;
            (BasisDescriptor::poch_asc(li * t(i) / s.clone(), q.clone()), c)
        }
        Label::P21iii => {
            let (hi, hip, li, lip) = (p.h(i)?.clone(), p.h(ip)?.clone(), p.l(i)?.clone(), p.l(ip)?.clone());
            let ratio = hi.clone() * t(i) / (lip.clone() * t(ip));
            let (u, r) = (bq.clone() * lip / hip, q.clone() * hi.clone() / li);
            let c = double(
                &|n| {
                    Ok(cx.poch(&bq, n)
                        * cx.qpow(n as i64)
                        * cx.inv_poch(&(q.clone() * ratio.clone()), n, "q·A_i·t_i/(L_i'·t_i')")?)
                },
                &|n, k| {
                    Ok(cx.poch(&u, k)
                        * cx.inv_poch(&r, k, "q·A_i/L_i")?
                        * cx.binom_den(n, k)
                        * cx.qpow(tri(k))
                        * (-ratio.clone()).pow_i(k as i64))
                },
            )?;
            (BasisDescriptor::poch_desc(hi * s.clone() * t(i), q.clone()), c)
        }
        Label::T22i => {
            let (hi, hip, li, lip) = (p.h(i)?.clone(), p.h(ip)?.clone(), p.l(i)?.clone(), p.l(ip)?.clone());
            let c = hyper_terms(
                &[bq.clone(), p.lam.clone() * p.alpha2()?.clone()],
                &[
                    (q.clone() * hi.clone() / li, "q·A_i/L_i"),
                    (q.clone() * hi.clone() * t(i) / (lip * t(ip)), "q·A_i·t_i/(L_i'·t_i')"),
                ],
                &q,
                &one(),
                0,
                n_max,
            )?;
            (
                BasisDescriptor::mixed_asc(hi * s.clone() * t(i), hip * t(ip) / s.clone(), q.clone()),
                c,
            )
        }
        Label::T22ii => {
            let (hi, hip, li, lip) = (p.h(i)?.clone(), p.h(ip)?.clone(), p.l(i)?.clone(), p.l(ip)?.clone());
            let (u, r) = (
                bq.clone() * lip.clone() / hip.clone(),
                q.clone() * hi.clone() / li.clone(),
            );
            let z = -(s.clone() * hi * t(i) / bq.clone()) / (lip * t(ip));
            let den = q.clone() * hip.clone() * t(ip) / (li.clone() * t(i));
            let c = double(
                &|n| Ok(cx.poch(&bq, n) * cx.inv_poch(&den, n, "q·A_i'·t_i'/(L_i·t_i)")?),
                &|n, k| {
                    let (n, k) = (n as i64, k as i64);
                    Ok(s.pow_i(-2 * n * k + k * k)
                        * cx.poch(&u, k as usize)
                        * cx.inv_poch(&r, k as usize, "q·A_i/L_i")?
                        * cx.binom_den(n as usize, k as usize)
                        * z.pow_i(k))
                },
            )?;
            let basis =
                BasisDescriptor::mixed_desc(li * t(i) / s.clone(), s.clone() * hip * t(ip) / bq.clone(), q.clone());
            (basis, c)
        }
        Label::T31i => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let u = bq.clone() * l1.clone() / h1.clone();
            let z = -(h2 * t(2)) / (bq.clone() * l1 * t(1));
            let g = s.clone() * h1 * t(1) / bq.clone();
            let c = double(&|n| Ok(g.pow_i(n as i64) * cx.poch(&bq, n)), &|n, l| {
                let e = -((l as i64) * (2 * n as i64 - l as i64 - 1)) / 2;
                Ok(cx.poch(&u, l) * cx.binom_den(n, l) * cx.qpow(e) * z.pow_i(l as i64))
            })?;
            (md(), c)
        }
        Label::T31ii => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let c = t31_ii_terms(&q, &bq, &(h1 / l1.clone()), &(h2 * t(2) / (l1.clone() * t(1))), n_max)?;
            (BasisDescriptor::poch_asc(l1 * t(1) / s.clone(), q.clone()), c)
        }
        Label::T31iii => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let z = bq.clone() * h1.clone() * t(1) / (h2 * t(2));
            let r = q.clone() * h1.clone() / l1;
            let c = double(&|n| Ok(cx.poch(&bq, n) * cx.qpow(n as i64)), &|n, k| {
                Ok(cx.qpow((k * k) as i64) * z.pow_i(k as i64) * cx.inv_poch(&r, k, "q·A1/L1")? * cx.binom_den(n, k))
            })?;
            (BasisDescriptor::poch_desc(h1 * s.clone() * t(1), q.clone()), c)
        }
        Label::T31iv => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let ratio = h2.clone() * t(2) / (l1.clone() * t(1));
            let u = bq.clone() * l1 / h1;
            let c = double(
                &|n| {
                    Ok(cx.qpow(n as i64)
                        * cx.poch(&bq, n)
                        * cx.inv_poch(&(q.clone() * ratio.clone()), n, "q·A2·t2/(L1·t1)")?)
                },
                &|n, k| Ok(cx.poch(&u, k) * cx.binom_den(n, k) * cx.qpow(tri(k)) * (-ratio.clone()).pow_i(k as i64)),
            )?;
            (BasisDescriptor::poch_desc(h2 * s.clone() * t(2), q.clone()), c)
        }
        Label::T32i => {
            let (hi, hip, l1) = (p.h(i)?.clone(), p.h(ip)?.clone(), p.lo1()?.clone());
            let c = hyper_terms(
                std::slice::from_ref(&bq),
                &[(q.clone() * hi.clone() * t(i) / (l1 * t(1)), "q·A_i·t_i/(L1·t1)")],
                &q,
                &one(),
                0,
                n_max,
            )?;
            (
                BasisDescriptor::mixed_asc(hi * s.clone() * t(i), hip * t(ip) / s.clone(), q.clone()),
                c,
            )
        }
        Label::T32ii => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let z = h1.clone() * t(1) / (h2.clone() * t(2));
            let r = q.clone() * h1 / l1.clone();
            let den = q.clone() * h2.clone() * t(2) / (l1.clone() * t(1));
            let c = double(
                &|n| Ok(cx.poch(&bq, n) * cx.inv_poch(&den, n, "q·A2·t2/(L1·t1)")?),
                &|n, k| {
                    let e = (k * k) as i64 - (n * k) as i64;
                    Ok(cx.qpow(e) * cx.inv_poch(&r, k, "q·A1/L1")? * cx.binom_den(n, k) * z.pow_i(k as i64))
                },
            )?;
            let basis =
                BasisDescriptor::mixed_desc(l1 * t(1) / s.clone(), s.clone() * h2 * t(2) / bq.clone(), q.clone());
            (basis, c)
        }
        Label::T41i => (md(), t41_i_terms(&cx, n_max)?),
        Label::T41ii => {
            let (hi, hip) = (p.h(i)?.clone(), p.h(ip)?.clone());
            let z = bq.clone() * hi.clone() * t(i) / (hip * t(ip));
            let c = double(&|n| Ok(cx.poch(&bq, n) * cx.qpow(n as i64)), &|n, k| {
                Ok(cx.qpow((k * k) as i64) * z.pow_i(k as i64) * cx.binom_den(n, k))
            })?;
            (BasisDescriptor::poch_desc(hi * s.clone() * t(i), q.clone()), c)
        }
        Label::T41iii => {
            let (hi, hip) = (p.h(i)?.clone(), p.h(ip)?.clone());
            let c = hyper_terms(std::slice::from_ref(&bq), &[], &q, &one(), 0, n_max)?;
            (
                BasisDescriptor::mixed_asc(hi * s.clone() * t(i), hip * t(ip) / s.clone(), q.clone()),
                c,
            )
        }
        Label::T51i => {
            let (h1, li, lip) = (p.h1()?.clone(), p.l(i)?.clone(), p.l(ip)?.clone());
            let c = t51_i_terms(
                &q,
                &bq,
                &(q.clone() * h1.clone() * t(1) / (bq.clone() * lip * t(ip))),
                &(h1 * t(1) / (li.clone() * t(i))),
                n_max,
            )?;
            (BasisDescriptor::poch_asc(li * t(i) / s.clone(), q.clone()), c)
        }
        Label::T51ii => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let u = bq.clone() * l1.clone() / h1;
            let (w1, w2) = (l1 * t(1), l2 * t(2));
            let c = double(&|n| Ok(s.pow_i(n as i64) * cx.poch(&bq, n)), &|n, k| {
                Ok(cx.poch(&u, n - k) * cx.binom_den(n, k) * w1.pow_i(k as i64) * w2.pow_i((n - k) as i64))
            })?;
            (md(), c)
        }
        Label::T51iii => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let ratio = h1.clone() * t(1) / (l2 * t(2));
            let r = q.clone() * h1.clone() / l1;
            let c = double(
                &|n| {
                    Ok(cx.poch(&bq, n)
                        * cx.qpow(n as i64)
                        * cx.inv_poch(&(q.clone() * ratio.clone()), n, "q·A1·t1/(L2·t2)")?)
                },
                &|n, k| {
                    Ok(cx.qpow(tri(k))
                        * (-ratio.clone()).pow_i(k as i64)
                        * cx.inv_poch(&r, k, "q·A1/L1")?
                        * cx.binom_den(n, k))
                },
            )?;
            (BasisDescriptor::poch_desc(h1 * s.clone() * t(1), q.clone()), c)
        }
        Label::T52i => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let c = hyper_terms(
                std::slice::from_ref(&bq),
                &[
                    (q.clone() * h1.clone() / l1.clone(), "q·A1/L1"),
                    (q.clone() * h1.clone() * t(1) / (l2.clone() * t(2)), "q·A1·t1/(L2·t2)"),
                ],
                &q,
                &-one(),
                1,
                n_max,
            )?;
            let d = bq.clone() * l1 * l2 * t(2) / (h1.clone() * q.clone() * s.clone());
            (BasisDescriptor::mixed_asc(h1 * s.clone() * t(1), d, q.clone()), c)
        }
        Label::T52ii => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let z = -(s.clone() * h1.clone() * t(1)) / (bq.clone() * l2 * t(2));
            let r = q.clone() * h1 / l1.clone();
            let c = double(
                &|n| Ok(sign::<T>(n) * cx.poch(&bq, n) * s.pow_i(-((n * n) as i64))),
                &|n, k| {
                    let (ni, ki) = (n as i64, k as i64);
                    Ok(s.pow_i(-2 * ni * ki + ki * ki)
                        * cx.inv_poch(&r, k, "q·A1/L1")?
                        * cx.binom_den(n, k)
                        * z.pow_i(ki))
                },
            )?;
            let c1 = l1 * t(1);
            (
                BasisDescriptor::mixed_desc(c1.clone() / s.clone(), c1 / bq.clone(), q.clone()),
                c,
            )
        }
        Label::T52iii => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let u = bq.clone() * l1.clone() / h1.clone();
            let z = l2.clone() * t(2) / (bq.clone() * l1 * t(1));
            let den = q.clone() * h1.clone() * t(1) / (l2.clone() * t(2));
            let c = double(
                &|n| Ok(cx.poch(&bq, n) * cx.inv_poch(&den, n, "q·A1·t1/(L2·t2)")?),
                &|n, k| Ok(cx.qpow(-((n * k) as i64)) * cx.poch(&u, k) * cx.binom_den(n, k) * z.pow_i(k as i64)),
            )?;
            let basis =
                BasisDescriptor::mixed_desc(l2 * t(2) / s.clone(), s.clone() * h1 * t(1) / bq.clone(), q.clone());
            (basis, c)
        }
        Label::T53i => {
            let (li, lip) = (p.l(i)?.clone(), p.l(ip)?.clone());
            let z = -(li.clone() * t(i)) / (bq.clone() * lip * t(ip));
            let c = hyper_terms(std::slice::from_ref(&bq), &[], &q, &z, -1, n_max)?;
            (BasisDescriptor::poch_asc(li * t(i) / s.clone(), q.clone()), c)
        }
        Label::T53ii => {
            let (w1, w2) = (p.lo1()?.clone() * t(1), p.lo2()?.clone() * t(2));
            (md(), binomial_sum_terms(&cx, &s, &bq, &w1, &w2, n_max))
        }
        Label::T53iii => {
            let (li, lip) = (p.l(i)?.clone(), p.l(ip)?.clone());
            let z = li.clone() * t(i) / (bq.clone() * lip * t(ip));
            let c = double(
                &|n| Ok(sign::<T>(n) * cx.poch(&bq, n) * s.pow_i(-((n * n) as i64))),
                &|n, k| Ok(cx.qpow(-((n * k) as i64)) * cx.binom_den(n, k) * z.pow_i(k as i64)),
            )?;
            let c1 = li * t(i);
            (
                BasisDescriptor::mixed_desc(c1.clone() / s.clone(), c1 / bq.clone(), q.clone()),
                c,
            )
        }
        Label::P63g2 | Label::P63g3 | Label::P65g2 | Label::P65g3 => unreachable!(),
    };
    Ok(ClosedForm {
        prefactor,
        basis,
        coeffs,
    })
}

/// The (1,2) singly confluent series around x = q^{l₁−1/2}t₁ in reduced
/// form: c_n = qⁿ(Q;q)ₙ/((q·r₁;q)ₙ(q·r₂;q)ₙ(q;q)ₙ) with r₁ = q^{h₁−l₁} and
/// r₂ = q^{h₂−l₁}t₂/t₁. No half-integer power of q appears.
pub fn t31_ii_terms<T: Scalar>(q: &T, big_q: &T, r1: &T, r2: &T, n_max: usize) -> Result<Vec<T>> {
    hyper_terms(
        std::slice::from_ref(big_q),
        &[
            (q.clone() * r1.clone(), "q·A1/L1"),
            (q.clone() * r2.clone(), "q·A2·t2/(L1·t1)"),
        ],
        q,
        q,
        0,
        n_max,
    )
}

/// The (2,1) series around x = q^{l_i−1/2}t_i in reduced form:
/// c_n = zⁿ(Q;q)ₙ/((q·b;q)ₙ(q;q)ₙ) with b = q^{h₁−l_i}t₁/t_i.
pub fn t51_i_terms<T: Scalar>(q: &T, big_q: &T, z: &T, b: &T, n_max: usize) -> Result<Vec<T>> {
    hyper_terms(
        std::slice::from_ref(big_q),
        &[(q.clone() * b.clone(), "q·A1·t1/(L_i·t_i)")],
        q,
        z,
        0,
        n_max,
    )
}

fn t41_i_terms<T: Scalar>(cx: &Ctx<'_, T>, n_max: usize) -> Result<Vec<T>> {
    let p = cx.p;
    let (w1, w2) = (p.h1()?.clone() * p.t1.clone(), p.h2()?.clone() * p.t2.clone());
    let reduced = t41_i_reduced_terms(&cx.q, &cx.big_q, &w1, &w2, n_max);
    Ok(reduced
        .into_iter()
        .enumerate()
        .map(|(n, c)| cx.s.pow_i(n as i64) * c)
        .collect())
}

/// The (0,2) series at ∞ without its sⁿ factor:
/// c_n/sⁿ = Q⁻ⁿ(Q;q)ₙ Σ_ℓ q^{−ℓ(n−ℓ)} w₁ⁿ⁻ˡ w₂ˡ/((q;q)_ℓ(q;q)_{n−ℓ}) with
/// w_i = q^{h_i}t_i.
pub fn t41_i_reduced_terms<T: Scalar>(q: &T, big_q: &T, w1: &T, w2: &T, n_max: usize) -> Vec<T> {
    let qfac: Vec<T> = (0..=n_max).map(|k| crate::qalg::q_factorial(q, k)).collect();
    (0..=n_max)
        .map(|n| {
            let mut acc = T::zero();
            for l in 0..=n {
                acc = acc
                    + q.pow_i(-((l * (n - l)) as i64)) * w1.pow_i((n - l) as i64) * w2.pow_i(l as i64)
                        / (qfac[l].clone() * qfac[n - l].clone());
            }
            big_q.pow_i(-(n as i64)) * q_pochhammer(big_q, q, n) * acc
        })
        .collect()
}

/// c_n = gⁿ(a;q)ₙ Σ_k w₁ᵏ w₂ⁿ⁻ᵏ/((q;q)_k(q;q)_{n−k}).
fn binomial_sum_terms<T: Scalar>(cx: &Ctx<'_, T>, g: &T, a: &T, w1: &T, w2: &T, n_max: usize) -> Vec<T> {
    (0..=n_max)
        .map(|n| {
            let mut acc = T::zero();
            for k in 0..=n {
                acc = acc + w1.pow_i(k as i64) * w2.pow_i((n - k) as i64) * cx.binom_den(n, k);
            }
            g.pow_i(n as i64) * cx.poch(a, n) * acc
        })
        .collect()
}

/// Infinite-product factors and descending series part of a gauge product
/// entry: g(x) = ∏ (βⱼx;q)_∞^{eⱼ} · x^μ Σ cₙ x⁻ⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeProductSeries<T: Scalar> {
    /// (β, e) with e = +1 for a product factor, −1 for its reciprocal.
    pub factors: Vec<(T, i8)>,
    pub series: ClosedForm<T>,
}

/// Series part of a gauge-product entry; `AsPrinted` keeps the printed
/// Pochhammer arguments where they disagree with the partner series.
pub fn gauge_product_series<T: Scalar>(
    id: &SolutionId,
    p: &ParamSet<T>,
    n_max: usize,
    tr: Transcription,
) -> Result<GaugeProductSeries<T>> {
    let cx = Ctx::new(p, n_max);
    let (q, s, bq) = (cx.q.clone(), cx.s.clone(), cx.big_q.clone());
    let prefactor = id.label.prefactor().scale(p)?;
    let md = BasisDescriptor::monomial_desc(q.clone());
    let (t1, t2) = (p.t1.clone(), p.t2.clone());
    let q_over = q.clone() / bq.clone(); // q^{1−λ−α₁}
    let (factors, coeffs) = match id.label {
        Label::P63g2 => {
            let (h1, h2, l1) = (p.h1()?.clone(), p.h2()?.clone(), p.lo1()?.clone());
            let head = q.clone() * h1 / (bq.clone() * l1.clone());
            let (w1, w2) = (l1 * t1, h2.clone() * t2.clone());
            let c = (0..=n_max)
                .map(|n| {
                    let mut acc = T::zero();
                    for k in 0..=n {
                        acc = acc
                            + cx.poch(&q_over, n - k)
                                * cx.binom_den(n, k)
                                * w1.pow_i(k as i64)
                                * w2.pow_i((n - k) as i64);
                    }
                    s.pow_i(n as i64) * cx.poch(&head, n) * acc
                })
                .collect();
            (vec![(s.clone() / (h2 * t2), -1)], c)
        }
        Label::P63g3 => {
            let (h1, l1, l2) = (p.h1()?.clone(), p.lo1()?.clone(), p.lo2()?.clone());
            let head = q.clone() * h1.clone() / (bq.clone() * l1.clone());
            let g = bq.clone() * l1 * t1.clone() / s.clone();
            let z = -(bq.clone() * l2.clone() * t2.clone()) / (h1 * q.clone() * t1);
            let c = (0..=n_max)
                .map(|n| {
                    let mut acc = T::zero();
                    for l in 0..=n {
                        let e = -((l as i64) * (2 * n as i64 - l as i64 - 1)) / 2;
                        acc = acc + cx.poch(&q_over, l) * cx.binom_den(n, l) * cx.qpow(e) * z.pow_i(l as i64);
                    }
                    g.pow_i(n as i64) * cx.poch(&head, n) * acc
                })
                .collect();
            (vec![(s.clone() / (l2 * t2), 1)], c)
        }
        Label::P65g2 => {
            let (h1, h2) = (p.h1()?.clone(), p.h2()?.clone());
            let head = match tr {
                Transcription::Corrected => q_over,
                Transcription::AsPrinted => (bq.clone() * q.clone()).recip(),
            };
            let (w1, w2) = (h1.clone() * t1.clone(), h2.clone() * t2.clone());
            let c = binomial_sum_terms(&cx, &s, &head, &w1, &w2, n_max);
            (vec![(s.clone() / w1, -1), (s.clone() / w2, -1)], c)
        }
        Label::P65g3 => {
            let (l1, l2) = (p.lo1()?.clone(), p.lo2()?.clone());
            let head = match tr {
                Transcription::Corrected => q_over,
                Transcription::AsPrinted => bq.clone(),
            };
            let g = bq.clone() / s.clone();
            let (w1, w2) = (l1 * t1, l2 * t2);
            let c = (0..=n_max)
                .map(|n| {
                    let mut acc = T::zero();
                    for l in 0..=n {
                        acc = acc
                            + cx.qpow(-((l * (n - l)) as i64))
                                * w1.pow_i((n - l) as i64)
                                * w2.pow_i(l as i64)
                                * cx.binom_den(n, l);
                    }
                    g.pow_i(n as i64) * cx.poch(&head, n) * acc
                })
                .collect();
            (vec![(s.clone() / w1, 1), (s.clone() / w2, 1)], c)
        }
        _ => return Err(Error::unknown("gauge product entry", id.to_string())),
    };
    Ok(GaugeProductSeries {
        factors,
        series: ClosedForm {
            prefactor,
            basis: md,
            coeffs,
        },
    })
}
