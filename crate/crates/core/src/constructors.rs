//! Explicit permutation realizations of the named groups.
//!
//! Every constructor checks the closed-form order against the cap before
//! enumerating anything, then verifies the enumerated order matches.

use crate::arith;
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::field::FieldGF;
use crate::group::{closure, FiniteGroup, Subgroup};
use crate::perm::Permutation;
use crate::structure;

fn check_cap(order: Option<u128>, cap: usize) -> Result<()> {
    match order {
        Some(o) if o <= cap as u128 => Ok(()),
        Some(o) => Err(Error::CapExceeded { order: o, cap }),
        None => Err(Error::CapExceeded { order: u128::MAX, cap }),
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > u16::MAX as usize {
        return Err(Error::InvalidParams(format!("degree {degree} exceeds {}", u16::MAX)));
    }
    Ok(())
}

fn expect_order(g: &FiniteGroup, expected: u128, what: &str) -> Result<()> {
    if g.order() as u128 != expected {
        return Err(Error::InvalidParams(format!("{what}: enumerated order {} but expected {expected}", g.order())));
    }
    Ok(())
}

fn factorial(m: u64) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

fn perm_from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..degree).map(f).collect()).expect("constructed maps are bijections")
}

fn cycle(n: usize) -> Permutation {
    perm_from_fn(n, |i| (i + 1) % n)
}

fn require_prime(p: u64, what: &str) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidParams(format!("{what} = {p} is not prime")));
    }
    Ok(())
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: u64, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParams("cyclic(0)".into()));
    }
    check_cap(Some(n as u128), cap)?;
    check_degree(n as usize)?;
    closure(n as usize, &[cycle(n as usize)], cap)
}

pub fn sym(m: u64, cap: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidParams("sym(0)".into()));
    }
    check_cap(factorial(m), cap)?;
    let m = m as usize;
    let mut gens = vec![cycle(m)];
    if m > 2 {
        gens.push(Permutation::from_cycles(m, &[&[0, 1]])?);
    }
    closure(m, &gens, cap)
}

/// Alternating group on `m` points, generated by `(0 1 2)` and an `m`- or `(m-1)`-cycle.
pub fn alt(m: u64, cap: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidParams("alt(0)".into()));
    }
    check_cap(factorial(m).map(|f| (f / 2).max(1)), cap)?;
    let m = m as usize;
    if m < 3 {
        return closure(m, &[Permutation::identity(m)], cap);
    }
    let mut gens = vec![Permutation::from_cycles(m, &[&[0, 1, 2]])?];
    if m > 3 {
        let long: Vec<usize> = if m % 2 == 1 { (0..m).collect() } else { (1..m).collect() };
        gens.insert(0, Permutation::from_cycles(m, &[&long])?);
    }
    closure(m, &gens, cap)
}

/// Dihedral group of order `2n`; on `n` points for `n >= 3`, on 2 and 4 points for `n = 1, 2`.
pub fn dihedral(n: u64, cap: usize) -> Result<FiniteGroup> {
    check_cap(Some(2 * n as u128), cap)?;
    match n {
        0 => Err(Error::InvalidParams("dihedral(0)".into())),
        1 => closure(2, &[Permutation::from_cycles(2, &[&[0, 1]])?], cap),
        2 => closure(
            4,
            &[Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?, Permutation::from_cycles(4, &[&[0, 2], &[1, 3]])?],
            cap,
        ),
        _ => {
            let n = n as usize;
            check_degree(n)?;
            closure(n, &[cycle(n), perm_from_fn(n, |i| (n - i) % n)], cap)
        }
    }
}

/// A direct product acting on the disjoint union of its factors' points.
#[derive(Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub factors: Vec<FiniteGroup>,
    offsets: Vec<usize>,
}

impl DirectProduct {
    /// Component of `x` in factor `i`.
    pub fn project(&self, x: usize, i: usize) -> usize {
        let f = &self.factors[i];
        let off = self.offsets[i];
        let im = self.group.images(x);
        let local: Vec<usize> = (0..f.degree()).map(|j| im[off + j] as usize - off).collect();
        f.index_of(&Permutation::from_images(local).expect("blocks are invariant")).expect("component lies in factor")
    }

    /// The element with the given components.
    pub fn embed(&self, parts: &[usize]) -> usize {
        assert_eq!(parts.len(), self.factors.len());
        let mut images: Vec<usize> = Vec::with_capacity(self.group.degree());
        for (i, (&x, f)) in parts.iter().zip(&self.factors).enumerate() {
            images.extend(f.images(x).iter().map(|&j| j as usize + self.offsets[i]));
        }
        if images.is_empty() {
            return self.group.identity();
        }
        self.group.index_of(&Permutation::from_images(images).expect("bijection")).expect("product element")
    }

    /// Product of per-factor sets as a set of the product group.
    pub fn product_set(&self, sets: &[ElementSet]) -> ElementSet {
        let mut out = ElementSet::empty(self.group.order());
        let mut parts = vec![0usize; sets.len()];
        let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        if lists.iter().any(|l| l.is_empty()) {
            return out;
        }
        let mut idx = vec![0usize; sets.len()];
        loop {
            for (k, l) in lists.iter().enumerate() {
                parts[k] = l[idx[k]];
            }
            out.insert(self.embed(&parts));
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn direct_product(factors: Vec<FiniteGroup>, cap: usize) -> Result<DirectProduct> {
    let order = factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.order() as u128));
    check_cap(order, cap)?;
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    check_degree(degree)?;
    if factors.is_empty() {
        return Ok(DirectProduct { group: FiniteGroup::trivial(1), factors, offsets: vec![] });
    }
    let mut offsets = Vec::with_capacity(factors.len());
    let mut gens = Vec::new();
    let mut off = 0;
    for f in &factors {
        offsets.push(off);
        gens.extend(f.generators().iter().map(|g| g.embed(off, degree)));
        off += f.degree();
    }
    let group = closure(degree, &gens, cap)?;
    expect_order(&group, order.unwrap(), "direct product")?;
    Ok(DirectProduct { group, factors, offsets })
}

/// `N ⋊ H` for a right action `act(h, n) = n^h` by automorphisms, realized by its
/// right regular representation on pairs `(h, n)`.
pub fn semidirect_product(
    n_group: &FiniteGroup,
    h_group: &FiniteGroup,
    act: impl Fn(usize, usize) -> usize,
    cap: usize,
) -> Result<FiniteGroup> {
    let (nn, nh) = (n_group.order(), h_group.order());
    check_cap(Some(nn as u128 * nh as u128), cap)?;
    check_degree(nn * nh)?;
    let table: Vec<usize> = (0..nh).flat_map(|h| (0..nn).map(move |n| (h, n))).map(|(h, n)| act(h, n)).collect();
    let image = |h: usize, n: usize| table[h * nn + n];
    for h in 0..nh {
        let mut seen = vec![false; nn];
        for n in 0..nn {
            let m = image(h, n);
            if m >= nn || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidAction(format!("h = {h} does not act bijectively")));
            }
            for n2 in 0..nn {
                if image(h, n_group.mul(n, n2)) != n_group.mul(m, image(h, n2)) {
                    return Err(Error::InvalidAction(format!("h = {h} is not a homomorphism of N")));
                }
            }
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let h12 = h_group.mul(h1, h2);
            if (0..nn).any(|n| image(h12, n) != image(h2, image(h1, n))) {
                return Err(Error::InvalidAction(format!("action is not compatible with h{h1} * h{h2}")));
            }
        }
    }
    let degree = nn * nh;
    // (h', n') * (h, n) = (h' h, n'^h n)
    let right_mul = |h: usize, n: usize| {
        perm_from_fn(degree, |pt| {
            let (h2, n2) = (pt / nn, pt % nn);
            h_group.mul(h2, h) * nn + n_group.mul(image(h, n2), n)
        })
    };
    let mut gens: Vec<Permutation> = h_group.generator_indices().iter().map(|&h| right_mul(h, 0)).collect();
    gens.extend(n_group.generator_indices().iter().map(|&n| right_mul(0, n)));
    let g = closure(degree, &gens, cap)?;
    expect_order(&g, (nn * nh) as u128, "semidirect product")?;
    Ok(g)
}

/// `H ≀ C` with `C` permuting `C.degree()` copies of `H`'s points.
pub fn wreath_product(h: &FiniteGroup, c: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let n = c.degree();
    let order = arith::checked_pow(h.order() as u64, n as u64).and_then(|b| b.checked_mul(c.order() as u128));
    check_cap(order, cap)?;
    let d = h.degree();
    let degree = n * d;
    check_degree(degree)?;
    let mut gens = Vec::new();
    for i in 0..n {
        gens.extend(h.generators().iter().map(|g| g.embed(i * d, degree)));
    }
    for s in c.generators() {
        gens.push(perm_from_fn(degree, |pt| s.apply(pt / d) * d + pt % d));
    }
    let g = closure(degree, &gens, cap)?;
    expect_order(&g, order.unwrap(), "wreath product")?;
    Ok(g)
}

/// The affine Frobenius group `(GF(q^n), +) ⋊ C_p` with `n` the order of `q` mod `p`.
///
/// Generator 0 is multiplication by an element of order `p` (the complement
/// generator, used as `h`); the rest are translations by an additive basis.
#[derive(Debug)]
pub struct Frobenius {
    pub group: FiniteGroup,
    /// Multiplicative order of `q` modulo `p`.
    pub n: u32,
    pub kernel: Subgroup,
    pub complement_generator: usize,
}

pub fn frobenius(p: u64, q: u64, cap: usize) -> Result<Frobenius> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if p == q {
        return Err(Error::InvalidParams("p and q must be distinct".into()));
    }
    let n = arith::mult_order(q, p).expect("q is invertible mod p") as u32;
    let qn = arith::checked_pow(q, n as u64).filter(|&v| v <= crate::field::MAX_FIELD_ORDER as u128);
    let Some(qn) = qn else {
        return Err(Error::CapExceeded { order: u128::MAX, cap });
    };
    check_cap(Some(qn * p as u128), cap)?;
    let field = FieldGF::new(qn as u64)?;
    let zeta = field.element_of_order(p)?;
    let size = field.order();
    let mut gens = vec![perm_from_fn(size, |v| field.mul(zeta, v))];
    for b in field.basis() {
        gens.push(perm_from_fn(size, |v| field.add(v, b)));
    }
    let group = closure(size, &gens, cap)?;
    expect_order(&group, qn * p as u128, "frobenius")?;
    let complement_generator = group.generator_indices()[0];
    let kernel = group.generated_subgroup(&group.generator_indices()[1..]);
    Ok(Frobenius { group, n, kernel, complement_generator })
}

/// `C_{p^m} ⋊ C_q` acting on `Z/p^m` by `v -> k v + b`, with `k` the least
/// multiplier of order `q` modulo `p^m` and `k != 1 mod p`.
pub fn frob_cyclic(p: u64, m: u32, q: u64, cap: usize) -> Result<FiniteGroup> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    let pm = arith::checked_pow(p, m as u64).ok_or(Error::CapExceeded { order: u128::MAX, cap })?;
    check_cap(pm.checked_mul(q as u128), cap)?;
    let pm = pm as u64;
    if !(p - 1).is_multiple_of(q) {
        return Err(Error::NoSuchAction(format!("{q} does not divide {p} - 1")));
    }
    let k = (2..pm)
        .find(|&k| (k - 1) % p != 0 && arith::mult_order(k, pm) == Some(q))
        .ok_or_else(|| Error::NoSuchAction(format!("no multiplier of order {q} mod {pm}")))?;
    let size = pm as usize;
    check_degree(size)?;
    let gens = [perm_from_fn(size, |v| (v as u64 * k % pm) as usize), perm_from_fn(size, |v| (v + 1) % size)];
    let g = closure(size, &gens, cap)?;
    expect_order(&g, pm as u128 * q as u128, "frob_cyclic")?;
    Ok(g)
}

/// `Y_t = Q^{p^t} <g>` inside `H ≀ C_{p^t}` for `H = Q ⋊ P` the Frobenius group
/// above and `g = (h, 1, .., 1) σ`.
///
/// Generator 0 is `g`; the remaining generators are `Q` in the first block.
#[derive(Debug)]
pub struct WreathY {
    pub group: FiniteGroup,
    pub g: usize,
    /// `n_t = p^t`.
    pub n_t: u64,
    /// Order of `q` modulo `p`.
    pub n: u32,
    /// The normal subgroup `Q^{n_t}`.
    pub base: Subgroup,
}

pub fn wreath_y_order(p: u64, q: u64, t: u32) -> Option<u128> {
    let n = arith::mult_order(q, p)?;
    let nt = arith::checked_pow(p, t as u64)? as u64;
    let qpart = arith::checked_pow(q, nt.checked_mul(n)?)?;
    qpart.checked_mul(arith::checked_pow(p, t as u64 + 1)?)
}

pub fn wreath_y(p: u64, q: u64, t: u32, cap: usize) -> Result<WreathY> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if p == q {
        return Err(Error::InvalidParams("p and q must be distinct".into()));
    }
    if t == 0 {
        return Err(Error::InvalidParams("t must be positive".into()));
    }
    let order = wreath_y_order(p, q, t);
    check_cap(order, cap)?;
    let h = frobenius(p, q, cap)?;
    let d = h.group.degree();
    let nt = p.pow(t) as usize;
    let degree = nt * d;
    check_degree(degree)?;
    let hperm = h.group.element(h.complement_generator);
    // (h, 1, .., 1) first, then σ: block i -> block i + 1.
    let g = perm_from_fn(degree, |pt| {
        let (blk, j) = (pt / d, pt % d);
        let j = if blk == 0 { hperm.apply(j) } else { j };
        ((blk + 1) % nt) * d + j
    });
    let mut gens = vec![g];
    gens.extend(h.group.generators()[1..].iter().map(|q| q.embed(0, degree)));
    let group = closure(degree, &gens, cap)?;
    expect_order(&group, order.unwrap(), "wreath_y")?;
    let g = group.generator_indices()[0];
    let blocks_fixed = ElementSet::from_indices(
        group.order(),
        (0..group.order()).filter(|&x| {
            let im = group.images(x);
            (0..nt).all(|b| im[b * d] as usize / d == b)
                && (0..nt).all(|b| {
                    let hx: Vec<usize> = (0..d).map(|j| im[b * d + j] as usize - b * d).collect();
                    h.kernel.contains(h.group.index_of(&Permutation::from_images(hx).unwrap()).unwrap())
                })
        }),
    );
    let base = group.subgroup_from_set(blocks_fixed);
    Ok(WreathY { group, g, n_t: nt as u64, n: h.n, base })
}

/// `X_t = W_t ⋊ Y_t` inside `C_{p^t} ≀ Y_t`, where `Y_t` acts on the cosets of
/// the Sylow `p`-subgroup `<g>` and `W_t` is the product-one part of the base.
///
/// Generator 0 is `g_W = (a, a^-1, 1, .., 1)`; next come the generators of `Y_t`
/// acting rigidly on blocks, then the remaining product-one base generators.
#[derive(Debug)]
pub struct GroupX {
    pub group: FiniteGroup,
    pub g_w: usize,
    /// The base `W_t`.
    pub w: Subgroup,
    /// The complement, a copy of `Y_t`.
    pub y: Subgroup,
    /// Number of cosets (blocks) `|Y_t : <g>|`.
    pub blocks: usize,
}

pub fn group_x_order(p: u64, q: u64, t: u32) -> Option<u128> {
    let y = wreath_y_order(p, q, t)?;
    let blocks = y / arith::checked_pow(p, t as u64 + 1)?;
    let w = arith::checked_pow(arith::checked_pow(p, t as u64)? as u64, (blocks as u64).checked_sub(1)?)?;
    w.checked_mul(y)
}

pub fn group_x(p: u64, q: u64, t: u32, cap: usize) -> Result<GroupX> {
    check_cap(group_x_order(p, q, t), cap)?;
    let y = wreath_y(p, q, t, cap)?;
    let yg = &y.group;
    let sylow = yg.generated_subgroup(&[y.g]);
    if sylow.order() as u64 != arith::p_part(yg.order() as u64, p) {
        return Err(Error::InvalidParams("<g> is not a Sylow subgroup".into()));
    }
    // Right cosets <g> y, numbered by least element index.
    let mut coset_of = vec![usize::MAX; yg.order()];
    let mut m = 0;
    for x in 0..yg.order() {
        if coset_of[x] == usize::MAX {
            for r in sylow.iter() {
                coset_of[yg.mul(r, x)] = m;
            }
            m += 1;
        }
    }
    let reps: Vec<usize> = {
        let mut r = vec![usize::MAX; m];
        for x in (0..yg.order()).rev() {
            r[coset_of[x]] = x;
        }
        r
    };
    let pt = p.pow(t) as usize;
    let degree = m * pt;
    check_degree(degree)?;
    let mut gens = Vec::new();
    let w_gen = |i: usize| {
        perm_from_fn(degree, |x| {
            let (blk, j) = (x / pt, x % pt);
            let j = if blk == 0 {
                (j + 1) % pt
            } else if blk == i {
                (j + pt - 1) % pt
            } else {
                j
            };
            blk * pt + j
        })
    };
    gens.push(w_gen(1));
    for &s in yg.generator_indices() {
        gens.push(perm_from_fn(degree, |x| coset_of[yg.mul(reps[x / pt], s)] * pt + x % pt));
    }
    gens.extend((2..m).map(w_gen));
    let group = closure(degree, &gens, cap)?;
    expect_order(&group, group_x_order(p, q, t).unwrap(), "group_x")?;
    let g_w = group.generator_indices()[0];
    let w_set = ElementSet::from_indices(
        group.order(),
        (0..group.order()).filter(|&x| {
            let im = group.images(x);
            (0..m).all(|b| im[b * pt] as usize / pt == b)
        }),
    );
    let w = group.subgroup_from_set(w_set);
    let ny = yg.generator_indices().len();
    let y_sub = group.generated_subgroup(&group.generator_indices()[1..1 + ny]);
    if group.center().order() != 1 {
        return Err(Error::InvalidParams("X_t has nontrivial center".into()));
    }
    Ok(GroupX { group, g_w, w, y: y_sub, blocks: m })
}

/// `V ⋊ (A ≀ C_n) <= AGL(n, q)` with `A = C_{p^t}` acting on one coordinate by
/// multiplication by an element of order `p^t`.
///
/// Generator 0 is `x = (a, 1, .., 1)`, then the coordinate shift, then the
/// translation by the first basis vector.
#[derive(Debug)]
pub struct Baer {
    pub group: FiniteGroup,
    pub x: usize,
}

pub fn baer_order(p: u64, t: u32, q: u64, n: u32) -> Option<u128> {
    let v = arith::checked_pow(q, n as u64)?;
    let a = arith::checked_pow(arith::checked_pow(p, t as u64)? as u64, n as u64)?;
    v.checked_mul(a)?.checked_mul(n as u128)
}

pub fn baer_group(p: u64, t: u32, q: u64, n: u32, cap: usize) -> Result<Baer> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if t == 0 || n == 0 {
        return Err(Error::InvalidParams("t and n must be positive".into()));
    }
    let pt = arith::checked_pow(p, t as u64).ok_or_else(|| Error::InvalidParams("p^t overflows".into()))? as u64;
    if !(q - 1).is_multiple_of(pt) {
        return Err(Error::InvalidParams(format!("{pt} does not divide {q} - 1")));
    }
    check_cap(baer_order(p, t, q, n), cap)?;
    let field = FieldGF::new(q)?;
    let lambda = field.element_of_order(pt)?;
    let (qs, n) = (q as usize, n as usize);
    let size = qs.pow(n as u32);
    check_degree(size)?;
    let coords = |v: usize| -> Vec<usize> { (0..n).map(|i| v / qs.pow(i as u32) % qs).collect() };
    let encode = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &f| acc * qs + f) };
    let x = perm_from_fn(size, |v| {
        let mut c = coords(v);
        c[0] = field.mul(lambda, c[0]);
        encode(&c)
    });
    let shift = perm_from_fn(size, |v| {
        let c = coords(v);
        let s: Vec<usize> = (0..n).map(|i| c[(i + n - 1) % n]).collect();
        encode(&s)
    });
    let translate = perm_from_fn(size, |v| {
        let mut c = coords(v);
        c[0] = field.add(c[0], 1);
        encode(&c)
    });
    let group = closure(size, &[x, shift, translate], cap)?;
    expect_order(&group, baer_order(p, t, q, n as u32).unwrap(), "baer_group")?;
    if structure::o_p(&group, p).order() != 1 {
        return Err(Error::InvalidParams("O_p(G) is nontrivial".into()));
    }
    let x = group.generator_indices()[0];
    Ok(Baer { group, x })
}

/// `SL(2, q)` acting on the `q^2 - 1` nonzero row vectors of `GF(q)^2`.
///
/// Generators are the elementary matrices over an additive basis (upper, then
/// lower). `diagonal` is `diag(γ, γ^-1)` for the field generator `γ`, which has
/// order `q - 1`.
#[derive(Debug)]
pub struct Sl2 {
    pub group: FiniteGroup,
    pub diagonal: usize,
}

pub fn sl2_order(q: u64) -> Option<u128> {
    (q as u128).checked_mul((q as u128).checked_mul(q as u128)?.checked_sub(1)?)
}

pub fn sl2(q: u64, cap: usize) -> Result<Sl2> {
    if arith::prime_power(q).is_none() {
        return Err(Error::InvalidParams(format!("{q} is not a prime power")));
    }
    check_cap(sl2_order(q), cap)?;
    let field = FieldGF::new(q)?;
    let qs = q as usize;
    let degree = qs * qs - 1;
    check_degree(degree)?;
    let decode = |pt: usize| ((pt + 1) % qs, (pt + 1) / qs);
    let encode = |a: usize, b: usize| a + b * qs - 1;
    let matrix = |m: [usize; 4]| {
        perm_from_fn(degree, |pt| {
            let (a, b) = decode(pt);
            // (a, b) * [[m0, m1], [m2, m3]]
            let a2 = field.add(field.mul(a, m[0]), field.mul(b, m[2]));
            let b2 = field.add(field.mul(a, m[1]), field.mul(b, m[3]));
            encode(a2, b2)
        })
    };
    let basis = field.basis();
    let mut gens: Vec<Permutation> = basis.iter().map(|&beta| matrix([1, beta, 0, 1])).collect();
    gens.extend(basis.iter().map(|&beta| matrix([1, 0, beta, 1])));
    let group = closure(degree, &gens, cap)?;
    expect_order(&group, sl2_order(q).unwrap(), "sl2")?;
    let gamma = field.generator();
    let diagonal = group.index_of(&matrix([gamma, 0, 0, field.inv(gamma)])).expect("diag lies in SL(2,q)");
    Ok(Sl2 { group, diagonal })
}
