//! Littlewood–Richardson coefficients and the coefficient families built
//! from them for the stable branching laws of `gl`, `sp` and `so`.
//!
//! Naming follows the restriction/tensor roles rather than symbols:
//!
//! * [`lr`] is `c^λ_{μν}`; [`lr_multi`] is the iterated version.
//! * [`c_pair`] / [`d_pair`] are the mixed (rational) `gl` restriction and
//!   tensor coefficients on pairs of partitions, [`cap_c`] / [`cap_d`] their
//!   `n`-fold chains.
//! * [`e_small`] (symplectic restriction), [`g_small`] (orthogonal
//!   restriction) and [`f_small`] (Newell–Littlewood product), with chains
//!   [`cap_e`], [`cap_g`], [`cap_f`].
//!
//! Every sum only visits the partition sizes forced by homogeneity. Results
//! are memoized per thread; a cached value is always identical to a fresh
//! evaluation, so the cache is unobservable.

use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

use crate::partitions::{partitions_of, Partition, PartitionPair};

#[derive(Default)]
struct Memo {
    parts: Vec<Rc<Vec<Partition>>>,
    lr: HashMap<(Partition, Partition, Partition), u64>,
    lr_multi: HashMap<(Partition, Vec<Partition>), u64>,
    c_pair: HashMap<(PartitionPair, PartitionPair, PartitionPair), u64>,
    d_pair: HashMap<(PartitionPair, PartitionPair, PartitionPair), u64>,
    cap_c: HashMap<(PartitionPair, Vec<PartitionPair>), u64>,
    cap_d: HashMap<(PartitionPair, Vec<PartitionPair>), u64>,
    small: HashMap<(Small, Partition, Partition, Partition), u64>,
    chain: HashMap<(Small, Partition, Vec<Partition>), u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Small {
    E,
    F,
    G,
}

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(Memo::default());
}

fn memoized<K, S, F>(select: S, key: K, compute: F) -> u64
where
    K: Eq + Hash + Clone,
    S: Fn(&mut Memo) -> &mut HashMap<K, u64>,
    F: FnOnce() -> u64,
{
    if let Some(v) = MEMO.with(|m| select(&mut m.borrow_mut()).get(&key).copied()) {
        return v;
    }
    let v = compute();
    MEMO.with(|m| {
        select(&mut m.borrow_mut()).insert(key, v);
    });
    v
}

/// Cached `partitions_of`.
fn parts(d: usize) -> Rc<Vec<Partition>> {
    MEMO.with(|m| {
        let mut m = m.borrow_mut();
        while m.parts.len() <= d {
            let next = m.parts.len();
            m.parts.push(Rc::new(partitions_of(next)));
        }
        Rc::clone(&m.parts[d])
    })
}

/// Partitions of `d` whose diagram fits inside `outer`.
fn parts_inside(d: usize, outer: &Partition) -> Vec<Partition> {
    parts(d).iter().filter(|p| outer.contains(p)).cloned().collect()
}

/// `c^λ_{μν}`: the number of LR tableaux of shape `λ/μ` and content `ν`.
pub fn lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if nu.is_empty() {
        return (lambda == mu) as u64;
    }
    if mu.is_empty() {
        return (lambda == nu) as u64;
    }
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    memoized(
        |m| &mut m.lr,
        (lambda.clone(), a.clone(), b.clone()),
        || count_lr_tableaux(lambda, mu, nu),
    )
}

/// Counts semistandard fillings of `outer/inner` with content `content`
/// whose reverse reading word (rows top to bottom, right to left) is a
/// lattice word.
fn count_lr_tableaux(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    struct Search<'a> {
        outer: &'a Partition,
        inner: &'a Partition,
        content: &'a Partition,
        cells: Vec<(usize, usize)>,
        grid: Vec<Vec<usize>>,
        used: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, idx: usize) -> u64 {
            let Some(&(r, c)) = self.cells.get(idx) else {
                return 1;
            };
            let hi = if c + 1 < self.outer.part(r) {
                self.grid[r][c + 1]
            } else {
                self.content.length()
            };
            let lo = if r > 0 && c >= self.inner.part(r - 1) {
                self.grid[r - 1][c] + 1
            } else {
                1
            };
            let mut total = 0;
            for v in lo..=hi {
                let lattice_ok = v == 1 || self.used[v] < self.used[v - 1];
                if self.used[v] < self.content.part(v - 1) && lattice_ok {
                    self.used[v] += 1;
                    self.grid[r][c] = v;
                    total += self.run(idx + 1);
                    self.grid[r][c] = 0;
                    self.used[v] -= 1;
                }
            }
            total
        }
    }

    let cells = (0..outer.length())
        .flat_map(|r| (inner.part(r)..outer.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut search = Search {
        outer,
        inner,
        content,
        cells,
        grid: outer.parts().iter().map(|&len| vec![0; len]).collect(),
        used: vec![0; content.length() + 1],
    };
    search.run(0)
}

/// Generalized coefficient `c^λ_{β₁,…,βₙ}`, the multiplicity of `λ` in the
/// iterated product of the `βᵢ`. An empty list is the empty product.
pub fn lr_multi(lambda: &Partition, betas: &[Partition]) -> u64 {
    match betas {
        [] => lambda.is_empty() as u64,
        [b] => (lambda == b) as u64,
        [b1, b2] => lr(lambda, b1, b2),
        [first, rest @ ..] => {
            let total: usize = betas.iter().map(Partition::size).sum();
            if total != lambda.size() {
                return 0;
            }
            memoized(
                |m| &mut m.lr_multi,
                (lambda.clone(), betas.to_vec()),
                || {
                    parts_inside(lambda.size() - first.size(), lambda)
                        .iter()
                        .map(|alpha| {
                            let head = lr(lambda, alpha, first);
                            if head == 0 {
                                0
                            } else {
                                head * lr_multi(alpha, rest)
                            }
                        })
                        .sum()
                },
            )
        }
    }
}

/// Mixed restriction coefficient: multiplicity of `V_a ⊗ V_b` in the
/// restriction of `V_target` along `gl(2k) ⊃ gl(k) × gl(k)`.
pub fn c_pair(target: &PartitionPair, a: &PartitionPair, b: &PartitionPair) -> u64 {
    let (lp, lm) = target.sizes();
    let gp = a.plus.size() + b.plus.size();
    let gm = a.minus.size() + b.minus.size();
    if lp < gp || lm < gm || lp - gp != lm - gm {
        return 0;
    }
    memoized(
        |m| &mut m.c_pair,
        (target.clone(), a.clone(), b.clone()),
        || {
            let lambda = &target.plus;
            let mu = &target.minus;
            let plus_cands = parts_inside(gp, lambda);
            let minus_cands = parts_inside(gm, mu);
            let mut total = 0;
            for delta in parts(lp - gp).iter() {
                if !lambda.contains(delta) || !mu.contains(delta) {
                    continue;
                }
                let plus: u64 = plus_cands
                    .iter()
                    .map(|g| lr(lambda, g, delta) * lr(g, &a.plus, &b.plus))
                    .sum();
                if plus == 0 {
                    continue;
                }
                let minus: u64 = minus_cands
                    .iter()
                    .map(|g| lr(mu, g, delta) * lr(g, &a.minus, &b.minus))
                    .sum();
                total += plus * minus;
            }
            total
        },
    )
}

/// Mixed tensor coefficient: multiplicity of `V_target` in `V_a ⊗ V_b`
/// for `gl(k)`, `k` large.
pub fn d_pair(target: &PartitionPair, a: &PartitionPair, b: &PartitionPair) -> u64 {
    let (tp, tm) = target.sizes();
    let sp = a.plus.size() + b.plus.size();
    let sm = a.minus.size() + b.minus.size();
    if sp < tp || sm < tm || sp - tp != sm - tm {
        return 0;
    }
    memoized(
        |m| &mut m.d_pair,
        (target.clone(), a.clone(), b.clone()),
        || d_pair_sum(target, a, b, sp - tp),
    )
}

fn d_pair_sum(target: &PartitionPair, a: &PartitionPair, b: &PartitionPair, contracted: usize) -> u64 {
    // γ1 contracts a⁺ against b⁻ and γ2 contracts a⁻ against b⁺; for fixed
    // (γ1, γ2) the sum factors into a ⁺ part and a ⁻ part.
    let (ap, am) = a.sizes();
    let (bp, bm) = b.sizes();
    let mut total = 0;
    for s1 in 0..=contracted {
        let s2 = contracted - s1;
        if ap < s1 || bm < s1 || am < s2 || bp < s2 {
            continue;
        }
        for g1 in parts(s1).iter() {
            if !a.plus.contains(g1) || !b.minus.contains(g1) {
                continue;
            }
            for g2 in parts(s2).iter() {
                if !a.minus.contains(g2) || !b.plus.contains(g2) {
                    continue;
                }
                let alpha1: Vec<(Partition, u64)> = nonzero(parts(ap - s1).iter(), |x| lr(&a.plus, x, g1));
                let alpha2: Vec<(Partition, u64)> = nonzero(parts(bp - s2).iter(), |x| lr(&b.plus, g2, x));
                let mut plus = 0;
                for (x1, c1) in &alpha1 {
                    for (x2, c2) in &alpha2 {
                        plus += c1 * c2 * lr(&target.plus, x1, x2);
                    }
                }
                if plus == 0 {
                    continue;
                }
                let beta1 = nonzero(parts(am - s2).iter(), |x| lr(&a.minus, x, g2));
                let beta2 = nonzero(parts(bm - s1).iter(), |x| lr(&b.minus, g1, x));
                let mut minus = 0;
                for (y1, c1) in &beta1 {
                    for (y2, c2) in &beta2 {
                        minus += c1 * c2 * lr(&target.minus, y1, y2);
                    }
                }
                total += plus * minus;
            }
        }
    }
    total
}

fn nonzero<'a, I, F>(cands: I, f: F) -> Vec<(Partition, u64)>
where
    I: Iterator<Item = &'a Partition>,
    F: Fn(&Partition) -> u64,
{
    cands
        .filter_map(|p| {
            let v = f(p);
            (v != 0).then(|| (p.clone(), v))
        })
        .collect()
}

fn pair_sums(list: &[PartitionPair]) -> (usize, usize) {
    list.iter()
        .fold((0, 0), |(p, m), x| (p + x.plus.size(), m + x.minus.size()))
}

/// Pairs with the given component sizes whose components fit inside `outer`
/// (or all pairs of those sizes when `outer` is `None`).
fn pairs_of(plus: usize, minus: usize, outer: Option<&PartitionPair>) -> Vec<PartitionPair> {
    let ps: Vec<Partition> = match outer {
        Some(o) => parts_inside(plus, &o.plus),
        None => parts(plus).to_vec(),
    };
    let ms: Vec<Partition> = match outer {
        Some(o) => parts_inside(minus, &o.minus),
        None => parts(minus).to_vec(),
    };
    ps.iter()
        .flat_map(|p| ms.iter().map(move |m| PartitionPair::new(p.clone(), m.clone())))
        .collect()
}

/// `n`-fold restriction chain of [`c_pair`]: multiplicity of
/// `V_{β₁} ⊗ … ⊗ V_{βₙ}` in `V_target` along `gl(nk) ⊃ gl(k)^n`.
///
/// One factor is the identity restriction.
pub fn cap_c(target: &PartitionPair, betas: &[PartitionPair]) -> u64 {
    let (sp, sm) = pair_sums(betas);
    let (tp, tm) = target.sizes();
    if tp < sp || tm < sm || tp - sp != tm - sm {
        return 0;
    }
    match betas {
        [] => (target.plus.is_empty() && target.minus.is_empty()) as u64,
        [b] => (target == b) as u64,
        [b1, b2] => c_pair(target, b1, b2),
        [first, rest @ ..] => memoized(
            |m| &mut m.cap_c,
            (target.clone(), betas.to_vec()),
            || {
                let (rp, rm) = pair_sums(rest);
                let mut total = 0;
                // α sizes: (tp - |β₁⁺| - s, tm - |β₁⁻| - s)
                let top_p = tp - first.plus.size();
                let top_m = tm - first.minus.size();
                for s in 0..=top_p.min(top_m) {
                    let (ap, am) = (top_p - s, top_m - s);
                    if ap < rp || am < rm {
                        break;
                    }
                    for alpha in pairs_of(ap, am, Some(target)) {
                        let head = c_pair(target, &alpha, first);
                        if head != 0 {
                            total += head * cap_c(&alpha, rest);
                        }
                    }
                }
                total
            },
        ),
    }
}

/// `n`-fold tensor chain of [`d_pair`]: multiplicity of `V_target` in
/// `((V_{β₁} ⊗ V_{β₂}) ⊗ …) ⊗ V_{βₙ}`.
pub fn cap_d(target: &PartitionPair, betas: &[PartitionPair]) -> u64 {
    let (sp, sm) = pair_sums(betas);
    let (tp, tm) = target.sizes();
    if sp < tp || sm < tm || sp - tp != sm - tm {
        return 0;
    }
    match betas {
        [] => (target.plus.is_empty() && target.minus.is_empty()) as u64,
        [b] => (target == b) as u64,
        [b1, b2] => d_pair(target, b1, b2),
        [prefix @ .., last] => memoized(
            |m| &mut m.cap_d,
            (target.clone(), betas.to_vec()),
            || {
                let (pp, pm) = pair_sums(prefix);
                let (lp, lm) = last.sizes();
                let start = lp.saturating_sub(tp).max(lm.saturating_sub(tm));
                let mut total = 0;
                for s in start.. {
                    let (ap, am) = (tp + s - lp, tm + s - lm);
                    if ap > pp || am > pm {
                        break;
                    }
                    for alpha in pairs_of(ap, am, None) {
                        let tail = d_pair(target, &alpha, last);
                        if tail != 0 {
                            total += tail * cap_d(&alpha, prefix);
                        }
                    }
                }
                total
            },
        ),
    }
}

/// Symplectic restriction coefficient `Σ_{δ,γ} c^γ_{μν} c^λ_{γ,(2δ)ᵀ}`.
pub fn e_small(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    restriction_small(Small::E, lambda, mu, nu)
}

/// Orthogonal restriction coefficient `Σ_{δ,γ} c^γ_{μν} c^λ_{γ,2δ}`.
pub fn g_small(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    restriction_small(Small::G, lambda, mu, nu)
}

fn restriction_small(kind: Small, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let g = mu.size() + nu.size();
    if lambda.size() < g || !(lambda.size() - g).is_multiple_of(2) {
        return 0;
    }
    memoized(
        |m| &mut m.small,
        (kind, lambda.clone(), mu.clone(), nu.clone()),
        || {
            let gammas = nonzero(parts(g).iter(), |x| if lambda.contains(x) { lr(x, mu, nu) } else { 0 });
            parts((lambda.size() - g) / 2)
                .iter()
                .map(|delta| {
                    let even = match kind {
                        Small::E => delta.scaled(2).conjugate(),
                        _ => delta.scaled(2),
                    };
                    gammas.iter().map(|(x, c)| c * lr(lambda, x, &even)).sum::<u64>()
                })
                .sum()
        },
    )
}

/// Newell–Littlewood coefficient `Σ_{α,β,γ} c^λ_{αβ} c^μ_{αγ} c^ν_{βγ}`,
/// shared by the symplectic and orthogonal tensor products.
pub fn f_small(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let (l, m, n) = (lambda.size(), mu.size(), nu.size());
    if l > m + n || (m + n - l) % 2 != 0 {
        return 0;
    }
    let g = (m + n - l) / 2;
    if g > m || g > n {
        return 0;
    }
    memoized(
        |memo| &mut memo.small,
        (Small::F, lambda.clone(), mu.clone(), nu.clone()),
        || {
            let mut total = 0;
            for gamma in parts(g).iter() {
                if !mu.contains(gamma) || !nu.contains(gamma) {
                    continue;
                }
                let alphas = nonzero(parts(m - g).iter(), |x| lr(mu, x, gamma));
                let betas = nonzero(parts(n - g).iter(), |x| lr(nu, x, gamma));
                for (a, ca) in &alphas {
                    for (b, cb) in &betas {
                        total += ca * cb * lr(lambda, a, b);
                    }
                }
            }
            total
        },
    )
}

/// `n`-fold symplectic restriction chain of [`e_small`].
pub fn cap_e(lambda: &Partition, betas: &[Partition]) -> u64 {
    restriction_chain(Small::E, lambda, betas)
}

/// `n`-fold orthogonal restriction chain of [`g_small`].
pub fn cap_g(lambda: &Partition, betas: &[Partition]) -> u64 {
    restriction_chain(Small::G, lambda, betas)
}

fn restriction_chain(kind: Small, lambda: &Partition, betas: &[Partition]) -> u64 {
    let total: usize = betas.iter().map(Partition::size).sum();
    if lambda.size() < total || !(lambda.size() - total).is_multiple_of(2) {
        return 0;
    }
    match betas {
        [] => lambda.is_empty() as u64,
        [b] => (lambda == b) as u64,
        [b1, b2] => restriction_small(kind, lambda, b1, b2),
        [first, rest @ ..] => memoized(
            |m| &mut m.chain,
            (kind, lambda.clone(), betas.to_vec()),
            || {
                let rest_size: usize = rest.iter().map(Partition::size).sum();
                let top = lambda.size() - first.size();
                let mut sum = 0;
                for s in 0..=top / 2 {
                    let a = top - 2 * s;
                    if a < rest_size {
                        break;
                    }
                    for alpha in parts_inside(a, lambda) {
                        let head = restriction_small(kind, lambda, &alpha, first);
                        if head != 0 {
                            sum += head * restriction_chain(kind, &alpha, rest);
                        }
                    }
                }
                sum
            },
        ),
    }
}

/// `n`-fold Newell–Littlewood chain of [`f_small`].
pub fn cap_f(lambda: &Partition, betas: &[Partition]) -> u64 {
    let total: usize = betas.iter().map(Partition::size).sum();
    if lambda.size() > total || !(total - lambda.size()).is_multiple_of(2) {
        return 0;
    }
    match betas {
        [] => lambda.is_empty() as u64,
        [b] => (lambda == b) as u64,
        [b1, b2] => f_small(lambda, b1, b2),
        [prefix @ .., last] => memoized(
            |m| &mut m.chain,
            (Small::F, lambda.clone(), betas.to_vec()),
            || {
                let prefix_size: usize = prefix.iter().map(Partition::size).sum();
                let low = lambda.size().saturating_sub(last.size());
                let mut sum = 0;
                for a in (low..=prefix_size).filter(|a| (prefix_size - a).is_multiple_of(2)) {
                    for alpha in parts(a).iter() {
                        let tail = f_small(lambda, alpha, last);
                        if tail != 0 {
                            sum += tail * cap_f(alpha, prefix);
                        }
                    }
                }
                sum
            },
        ),
    }
}

/// A coefficient request with arguments matching its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientQuery {
    Lr(Partition, Partition, Partition),
    LrMulti(Partition, Vec<Partition>),
    CPair(PartitionPair, PartitionPair, PartitionPair),
    DPair(PartitionPair, PartitionPair, PartitionPair),
    CapC(PartitionPair, Vec<PartitionPair>),
    CapD(PartitionPair, Vec<PartitionPair>),
    ESmall(Partition, Partition, Partition),
    FSmall(Partition, Partition, Partition),
    GSmall(Partition, Partition, Partition),
    CapE(Partition, Vec<Partition>),
    CapF(Partition, Vec<Partition>),
    CapG(Partition, Vec<Partition>),
}

impl CoefficientQuery {
    pub fn evaluate(&self) -> u64 {
        use CoefficientQuery::*;
        match self {
            Lr(l, m, n) => lr(l, m, n),
            LrMulti(l, b) => lr_multi(l, b),
            CPair(t, a, b) => c_pair(t, a, b),
            DPair(t, a, b) => d_pair(t, a, b),
            CapC(t, b) => cap_c(t, b),
            CapD(t, b) => cap_d(t, b),
            ESmall(l, m, n) => e_small(l, m, n),
            FSmall(l, m, n) => f_small(l, m, n),
            GSmall(l, m, n) => g_small(l, m, n),
            CapE(l, b) => cap_e(l, b),
            CapF(l, b) => cap_f(l, b),
            CapG(l, b) => cap_g(l, b),
        }
    }

    /// Family names as used on the command line.
    pub const FAMILIES: [&'static str; 12] = [
        "lr", "lr-multi", "c-pair", "d-pair", "cap-c", "cap-d", "e", "f", "g", "cap-e", "cap-f", "cap-g",
    ];

    /// Parses a family name and textual arguments (first argument is the
    /// upper label, the rest are the lower labels).
    pub fn parse(family: &str, args: &[String]) -> crate::Result<Self> {
        use crate::error::Error;
        use CoefficientQuery::*;
        let single = |i: usize| -> crate::Result<Partition> { args[i].parse() };
        let pair = |i: usize| -> crate::Result<PartitionPair> { args[i].parse() };
        let need = |n: usize, exact: bool| -> crate::Result<()> {
            let ok = if exact { args.len() == n } else { args.len() >= n };
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{family} takes {}{n} arguments, got {}",
                    if exact { "" } else { "at least " },
                    args.len()
                )))
            }
        };
        let singles =
            |from: usize| -> crate::Result<Vec<Partition>> { args[from..].iter().map(|s| s.parse()).collect() };
        let pairs =
            |from: usize| -> crate::Result<Vec<PartitionPair>> { args[from..].iter().map(|s| s.parse()).collect() };
        Ok(match family {
            "lr" => {
                need(3, true)?;
                Lr(single(0)?, single(1)?, single(2)?)
            }
            "lr-multi" => {
                need(2, false)?;
                LrMulti(single(0)?, singles(1)?)
            }
            "c-pair" => {
                need(3, true)?;
                CPair(pair(0)?, pair(1)?, pair(2)?)
            }
            "d-pair" => {
                need(3, true)?;
                DPair(pair(0)?, pair(1)?, pair(2)?)
            }
            "cap-c" => {
                need(3, false)?;
                CapC(pair(0)?, pairs(1)?)
            }
            "cap-d" => {
                need(3, false)?;
                CapD(pair(0)?, pairs(1)?)
            }
            "e" => {
                need(3, true)?;
                ESmall(single(0)?, single(1)?, single(2)?)
            }
            "f" => {
                need(3, true)?;
                FSmall(single(0)?, single(1)?, single(2)?)
            }
            "g" => {
                need(3, true)?;
                GSmall(single(0)?, single(1)?, single(2)?)
            }
            "cap-e" => {
                need(3, false)?;
                CapE(single(0)?, singles(1)?)
            }
            "cap-f" => {
                need(3, false)?;
                CapF(single(0)?, singles(1)?)
            }
            "cap-g" => {
                need(3, false)?;
                CapG(single(0)?, singles(1)?)
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown coefficient family {other:?}; expected one of {:?}",
                    Self::FAMILIES
                )))
            }
        })
    }
}
