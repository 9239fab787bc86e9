//! Points of a torsion phi-module with values in the quotient ring: residue seeds refined by
//! the contraction x_i <- c^r Phi((sum_j c_{j,i} x_j) / E([pi_n])^r).

use serde::Serialize;

use super::galois::FieldAutomorphism;
use super::module::TorsionPhiModule;
use crate::error::{Error, Result};
use crate::localfield::towers::RadicalTower;
use crate::localfield::{LFElement, LocalField};
use crate::ramification::pj::budget_from_env;
use crate::ramification::{bound_u, break_fn, BreakDatum, RamBound};
use crate::rat::Q;
use crate::witt::{ideal_divide, AbarRing, QuotientIn, Truncated, WittJson, WittVector};

type W = WittVector<Truncated>;
pub type Tuple = Vec<W>;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest number of seeds examined.
    pub budget: u64,
    pub max_steps: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: budget_from_env(),
            max_steps: 2000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub field: LocalField,
    /// Representatives modulo W_n(b_F), sorted by their encoding.
    pub tuples: Vec<Tuple>,
    /// The fixed points in W_n(O_F), at `lift_precision` digits.
    pub lifts: Vec<Tuple>,
    pub lift_precision: u32,
    pub seeds_examined: usize,
    pub seed_depth: u32,
    /// Refinement steps used by each lift.
    pub steps: Vec<u32>,
    pub galois_orbits: Vec<Vec<usize>>,
}

impl SolutionSet {
    pub fn count(&self) -> usize {
        self.tuples.len()
    }
}

/// The fixed-point system of a module evaluated in one quotient ring.
pub struct PointSystem<'a> {
    module: &'a TorsionPhiModule,
    ring: &'a AbarRing,
    /// coeff[j][i]: image of c_{j,i} in W_n(O_F).
    coeff: Vec<Vec<W>>,
    gamma_r: W,
    seed_depth: u32,
    /// Digits at which refinement stops; the top digits absorb division losses.
    converge_at: u32,
}

fn min_val(x: &[W]) -> Option<u32> {
    x.iter().filter_map(|w| w.min_entry_val()).min()
}

fn sub_tuple(a: &[W], b: &[W]) -> Result<Tuple> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn exact(w: &W, ring: &Truncated) -> W {
    w.map(ring, |a| a.as_exact().with_prec(ring.prec))
}

impl<'a> PointSystem<'a> {
    pub fn new(module: &'a TorsionPhiModule, ring: &'a AbarRing) -> Result<PointSystem<'a>> {
        let k = ring.base();
        module.check_for_prime(k.p())?;
        if module.n() != ring.n() || module.r() != ring.r() {
            return Err(Error::BadShape(format!(
                "module has (n, r) = ({}, {}) but the ring has ({}, {})",
                module.n(),
                module.r(),
                ring.n(),
                ring.r()
            )));
        }
        let coeff = module
            .relation()
            .iter()
            .map(|row| row.iter().map(|s| s.eval(ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let gamma_r = ring.gamma().pow(ring.r() as u64)?;
        let p = k.p();
        let e = k.e();
        let e_f = ring.field().e();
        let pn = p.pow(ring.n() as u32);
        // valuation deficit of [pi_n]^(r_i) / E^r, in digits of F
        let min_fil = module
            .relation()
            .iter()
            .flat_map(|row| row.iter())
            .flat_map(|s| s.terms().iter().map(|t| t.1))
            .min()
            .unwrap_or(0);
        let deficit = ((e * ring.r()).saturating_sub(min_fil) * e_f) as u64;
        let seed_depth = if deficit == 0 {
            1
        } else {
            (p * deficit / ((p - 1) * e as u64 * pn)) as u32 + 1
        };
        let loss = gamma_r
            .ghost()
            .iter()
            .map(|g| g.val_digits().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let cap = ring.work().prec;
        let converge_at = cap.saturating_sub(loss + 2);
        if converge_at <= ring.bound_digits() {
            return Err(Error::PrecisionTooLow(format!(
                "working precision {cap} leaves no room above the quotient ideal"
            )));
        }
        Ok(PointSystem {
            module,
            ring,
            coeff,
            gamma_r,
            seed_depth,
            converge_at,
        })
    }

    pub fn seed_depth(&self) -> u32 {
        self.seed_depth
    }

    pub fn converge_at(&self) -> u32 {
        self.converge_at
    }

    fn combination(&self, x: &[W], i: usize) -> Result<W> {
        let mut s = self.ring.zero();
        for (j, xj) in x.iter().enumerate() {
            s = s.add(&self.coeff[j][i].mul(xj)?)?;
        }
        Ok(s)
    }

    /// One application of the system, dividing at the given modulus.
    fn apply_at(&self, x: &[W], modulus: u32) -> Result<Tuple> {
        let work = self.ring.work();
        (0..self.module.d())
            .map(|i| {
                let s = self.combination(x, i)?;
                let y = ideal_divide(&s, &self.gamma_r, modulus, QuotientIn::Integers)?;
                self.ring.phi_r_of_quotient(&exact(&y, work))
            })
            .collect()
    }

    /// Apply the system, falling back to a coarser modulus when the representative is only
    /// divisible up to digits that are not yet determined.
    pub fn apply(&self, x: &[W], known: u32) -> Result<Tuple> {
        match self.apply_at(x, self.ring.work().prec) {
            Err(Error::NotDivisible(_)) if known < self.ring.work().prec => self.apply_at(x, known),
            other => other,
        }
    }

    /// Refine a starting tuple to the fixed point, requiring a strict gain at every step.
    pub fn refine(&self, start: &[W], known: u32, max_steps: u32) -> Result<(Tuple, u32)> {
        let work = self.ring.work();
        let mut x: Tuple = start.iter().map(|w| exact(w, work)).collect();
        let mut depth = known.saturating_sub(1);
        for step in 1..=max_steps {
            let next = self.apply(&x, depth.max(known))?;
            let d = min_val(&sub_tuple(&next, &x)?).unwrap_or(u32::MAX);
            x = next.iter().map(|w| exact(w, work)).collect();
            if d >= self.converge_at {
                let out = x.iter().map(|w| w.truncate(self.converge_at)).collect();
                return Ok((out, step));
            }
            if d <= depth {
                return Err(Error::PrecisionInsufficient(format!(
                    "agreement stalled at {d} digits after {step} steps"
                )));
            }
            depth = d;
        }
        Err(Error::PrecisionInsufficient(format!(
            "no convergence within {max_steps} steps"
        )))
    }

    /// Whether a seed solves the system modulo pi^(seed depth).
    pub fn seed_ok(&self, s: &[W]) -> Result<bool> {
        let img = match self.apply(s, self.seed_depth) {
            Ok(v) => v,
            Err(Error::NotDivisible(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        let diff = sub_tuple(&img, s)?;
        Ok(diff
            .iter()
            .all(|w| w.truncate(self.seed_depth).min_entry_val().is_none()))
    }

    /// The three point conditions on a tuple of the quotient ring.
    pub fn verify(&self, x: &[W]) -> Result<bool> {
        let b = self.ring.bound_digits();
        for i in 0..self.module.d() {
            let s = self.combination(x, i)?.truncate(b);
            match ideal_divide(&s, &self.gamma_r, b, QuotientIn::Integers) {
                Ok(_) => {}
                Err(Error::NotDivisible(_)) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
        let img = self.apply(x, self.converge_at)?;
        for (a, b) in img.iter().zip(x) {
            if !self.ring.equal(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_point(&self, a: &[W], b: &[W]) -> Result<bool> {
        for (x, y) in a.iter().zip(b) {
            if !self.ring.equal(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Residue digits and uniformizer powers for seeds mod m^k, with the number of seed tuples.
    fn seed_count(&self) -> (Seeds, u128) {
        let f = self.ring.field();
        let digits = f.residue_representatives();
        let pi = f.uniformizer();
        let mut powers = Vec::with_capacity(self.seed_depth as usize);
        let mut pw = LFElement::one(f);
        for _ in 0..self.seed_depth {
            powers.push(pw.clone());
            pw = pw.mul(&pi);
        }
        let per_entry = (digits.len() as u128).saturating_pow(self.seed_depth);
        let slots = (self.module.d() * self.ring.n()) as u32;
        (Seeds { digits, powers, per_entry, zero: LFElement::zero(f) }, per_entry.saturating_pow(slots))
    }

    fn seed(&self, seeds: &Seeds, mut idx: u128) -> Result<Tuple> {
        let n = self.ring.n();
        let work = self.ring.work();
        let mut out = Vec::with_capacity(self.module.d());
        for _ in 0..self.module.d() {
            let mut entries = Vec::with_capacity(n);
            for _ in 0..n {
                entries.push(seeds.entry(idx % seeds.per_entry));
                idx /= seeds.per_entry;
            }
            out.push(W::new(self.ring.ctx(), work, entries)?);
        }
        Ok(out)
    }
}

/// Seeds are indexed in base q, one digit per power of the uniformizer, highest power first.
struct Seeds {
    digits: Vec<LFElement>,
    powers: Vec<LFElement>,
    per_entry: u128,
    zero: LFElement,
}

impl Seeds {
    fn entry(&self, mut idx: u128) -> LFElement {
        let q = self.digits.len() as u128;
        let mut acc = self.zero.clone();
        for pw in self.powers.iter().rev() {
            acc = acc.add(&self.digits[(idx % q) as usize].mul(pw));
            idx /= q;
        }
        acc
    }
}

fn encode(t: &[W]) -> String {
    serde_json::to_string(&t.iter().map(|w| w.to_json()).collect::<Vec<WittJson>>())
        .unwrap_or_default()
}

/// Enumerate residue seeds, refine each, and collect the distinct points.
pub fn solve_points(m: &TorsionPhiModule, ring: &AbarRing, opts: &SolveOptions) -> Result<SolutionSet> {
    let sys = PointSystem::new(m, ring)?;
    let (seeds, total) = sys.seed_count();
    let mut found: Vec<(Tuple, Tuple, u32)> = Vec::new();
    let mut examined = 0usize;
    for idx in 0..total {
        if idx >= opts.budget as u128 {
            return Err(Error::BudgetExceeded {
                partial: found.len(),
            });
        }
        examined += 1;
        let s = sys.seed(&seeds, idx)?;
        if !sys.seed_ok(&s)? {
            continue;
        }
        let (lift, steps) = match sys.refine(&s, sys.seed_depth, opts.max_steps) {
            Ok(v) => v,
            Err(Error::NotDivisible(_)) => continue,
            Err(e) => return Err(e),
        };
        let reduced: Tuple = lift.iter().map(|w| ring.reduce(w)).collect();
        let mut dup = false;
        for (t, _, _) in &found {
            if sys.same_point(t, &reduced)? {
                dup = true;
                break;
            }
        }
        if dup {
            continue;
        }
        if !sys.verify(&lift)? {
            return Err(Error::PrecisionInsufficient(
                "refined tuple fails the point conditions".into(),
            ));
        }
        found.push((reduced, lift, steps));
    }
    found.sort_by_key(|(t, _, _)| encode(t));
    let count = found.len();
    let mut tuples = Vec::with_capacity(count);
    let mut lifts = Vec::with_capacity(count);
    let mut steps = Vec::with_capacity(count);
    for (t, l, s) in found {
        tuples.push(t);
        lifts.push(l);
        steps.push(s);
    }
    Ok(SolutionSet {
        field: ring.field().clone(),
        tuples,
        lifts,
        lift_precision: sys.converge_at,
        seeds_examined: examined,
        seed_depth: sys.seed_depth,
        steps,
        galois_orbits: (0..count).map(|i| vec![i]).collect(),
    })
}

pub fn count_points(m: &TorsionPhiModule, ring: &AbarRing, opts: &SolveOptions) -> Result<usize> {
    Ok(solve_points(m, ring, opts)?.count())
}

/// The permutation of the solutions induced by an automorphism of F over F_n.
pub fn galois_action(
    m: &TorsionPhiModule,
    ring: &AbarRing,
    sols: &SolutionSet,
    sigma: &FieldAutomorphism,
) -> Result<Vec<usize>> {
    if sigma.top() != ring.field() {
        return Err(Error::NotAnAutomorphism("automorphism of a different field".into()));
    }
    let fixed = [ring.pi_n(), ring.zeta()];
    for g in fixed {
        if !sigma.apply(g)?.equals(g) {
            return Err(Error::NotAnAutomorphism("does not fix pi_n and zeta".into()));
        }
    }
    let sys = PointSystem::new(m, ring)?;
    let work = ring.work();
    let mut perm = Vec::with_capacity(sols.count());
    for lift in &sols.lifts {
        let moved: Tuple = lift
            .iter()
            .map(|w| {
                let entries = w
                    .entries()
                    .iter()
                    .map(|a| sigma.apply(a))
                    .collect::<Result<Vec<_>>>()?;
                W::new(ring.ctx(), work, entries)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut target = None;
        for (k, t) in sols.tuples.iter().enumerate() {
            if sys.same_point(t, &moved)? {
                target = Some(k);
                break;
            }
        }
        perm.push(target.ok_or_else(|| {
            Error::NotAnAutomorphism("image of a solution is not a solution".into())
        })?);
    }
    Ok(perm)
}

/// Orbits of the group generated by the given permutations.
pub fn orbits(count: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for perm in perms {
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..count {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|g| g[0] == root) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// r = 0 and the points are defined over an unramified extension of F_n.
    UnramifiedRespected,
    Respected,
    Sharp,
    Violated,
}

impl Verdict {
    pub fn describe(&self) -> &'static str {
        match self {
            Verdict::UnramifiedRespected => "unramified, bound respected",
            Verdict::Respected => "bound respected",
            Verdict::Sharp => "bound respected, sharp",
            Verdict::Violated => "bound violated",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CutOut {
    pub index: usize,
    pub field: LocalField,
    pub counts: Vec<usize>,
    pub target: usize,
    pub datum: BreakDatum,
    pub bound: RamBound,
    pub verdict: Verdict,
    pub solutions: SolutionSet,
}

/// The first candidate field over which the module has all p^(nd) points.
pub fn cut_out_extension(
    m: &TorsionPhiModule,
    tower: &RadicalTower,
    candidates: &[LocalField],
    opts: &SolveOptions,
) -> Result<CutOut> {
    let k = &tower.base;
    let p = k.p();
    let target = (p as usize).pow((m.n() * m.d()) as u32);
    let mut counts = Vec::new();
    for (index, f) in candidates.iter().enumerate() {
        let ring = AbarRing::from_tower(tower, f, m.r())?;
        let sols = solve_points(m, &ring, opts)?;
        counts.push(sols.count());
        if sols.count() < target {
            continue;
        }
        let fn_field = &tower.field;
        let unramified = f.e() == fn_field.e();
        let bound = bound_u(k, m.r(), tower.n)?;
        if !unramified {
            return Err(Error::UnsupportedPresentation(
                "breaks of ramified extensions of F_n are not computed".into(),
            ));
        }
        let datum = break_fn(k, tower.n)?.datum(f.name());
        let verdict = if m.r() == 0 {
            Verdict::UnramifiedRespected
        } else {
            compare(&datum.u, &bound.value)
        };
        return Ok(CutOut {
            index,
            field: f.clone(),
            counts,
            target,
            datum,
            bound,
            verdict,
            solutions: sols,
        });
    }
    Err(Error::NotFound {
        max_seen: counts.iter().copied().max().unwrap_or(0),
        target,
    })
}

fn compare(u: &Q, bound: &Q) -> Verdict {
    match u.cmp(bound) {
        std::cmp::Ordering::Less => Verdict::Respected,
        std::cmp::Ordering::Equal => Verdict::Sharp,
        std::cmp::Ordering::Greater => Verdict::Violated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::standard_field;
    use crate::phimodule::bundled::{bundled_module, curated_candidates};
    use crate::phimodule::galois::automorphisms;

    fn counts(name: &str) -> Vec<usize> {
        let k = standard_field(3, 1, 8).unwrap();
        let (tower, cands) = curated_candidates(&k, 1).unwrap();
        let m = bundled_module(name, 1).unwrap();
        cands
            .iter()
            .map(|f| {
                let ring = AbarRing::from_tower(&tower, f, m.r()).unwrap();
                count_points(&m, &ring, &SolveOptions::default()).unwrap()
            })
            .collect()
    }

    #[test]
    fn etale_counts() {
        assert_eq!(counts("etale_trivial"), vec![3, 3]);
        assert_eq!(counts("etale_twisted"), vec![1, 3]);
    }

    #[test]
    fn weight_one_counts() {
        assert_eq!(counts("weight_one"), vec![1, 3]);
        assert_eq!(counts("weight_one_split"), vec![3, 3]);
    }

    #[test]
    fn cut_out_and_verdicts() {
        let k = standard_field(3, 1, 8).unwrap();
        let (tower, cands) = curated_candidates(&k, 1).unwrap();
        let m = bundled_module("weight_one", 1).unwrap();
        let cut = cut_out_extension(&m, &tower, &cands, &SolveOptions::default()).unwrap();
        assert_eq!(cut.index, 1);
        assert_eq!(cut.counts, vec![1, 3]);
        assert_eq!(cut.datum.u, crate::rat::q(5, 2));
        assert_eq!(cut.verdict, Verdict::Sharp);
        let m = bundled_module("etale_trivial", 1).unwrap();
        let cut = cut_out_extension(&m, &tower, &cands, &SolveOptions::default()).unwrap();
        assert_eq!(cut.index, 0);
        assert_eq!(cut.verdict, Verdict::UnramifiedRespected);
        let err = cut_out_extension(&m, &tower, &[], &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NotFound { .. }));
    }

    #[test]
    fn galois_fixed_points_match_base_count() {
        let k = standard_field(3, 1, 8).unwrap();
        let (tower, cands) = curated_candidates(&k, 1).unwrap();
        let m = bundled_module("weight_one", 1).unwrap();
        let ring = AbarRing::from_tower(&tower, &cands[1], 1).unwrap();
        let sols = solve_points(&m, &ring, &SolveOptions::default()).unwrap();
        let auts = automorphisms(&cands[1], &tower.field).unwrap();
        assert_eq!(auts.len(), 2);
        let perms: Vec<Vec<usize>> = auts
            .iter()
            .map(|s| galois_action(&m, &ring, &sols, s).unwrap())
            .collect();
        for perm in &perms {
            let fixed = perm.iter().enumerate().filter(|(i, j)| i == *j).count();
            assert!(fixed == 3 || fixed == 1);
        }
        let all_fixed = (0..sols.count())
            .filter(|&i| perms.iter().all(|p| p[i] == i))
            .count();
        assert_eq!(all_fixed, 1);
        let orb = orbits(sols.count(), &perms);
        assert_eq!(orb.len(), 2);
        assert!(orb.iter().all(|o| 2 % o.len() == 0));
    }

    #[test]
    fn budget_is_enforced() {
        let k = standard_field(3, 1, 8).unwrap();
        let (tower, _) = curated_candidates(&k, 1).unwrap();
        let m = bundled_module("etale_trivial", 1).unwrap();
        let ring = AbarRing::from_tower(&tower, &tower.field, 0).unwrap();
        let opts = SolveOptions {
            budget: 2,
            ..SolveOptions::default()
        };
        assert!(matches!(
            solve_points(&m, &ring, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn two_lifts_agree() {
        let k = standard_field(3, 1, 8).unwrap();
        let (tower, cands) = curated_candidates(&k, 1).unwrap();
        let m = bundled_module("weight_one", 1).unwrap();
        let ring = AbarRing::from_tower(&tower, &cands[1], 1).unwrap();
        let sys = PointSystem::new(&m, &ring).unwrap();
        let sols = solve_points(&m, &ring, &SolveOptions::default()).unwrap();
        let f = ring.field();
        for t in &sols.tuples {
            let seed: Tuple = t.iter().map(|w| w.truncate(1)).collect();
            let bumped: Tuple = seed
                .iter()
                .map(|w| {
                    let shift = W::teichmuller(ring.ctx(), ring.work(), f.uniformizer().mul_int(7));
                    w.add(&shift).unwrap()
                })
                .collect();
            let (a, _) = sys.refine(&seed, 1, 500).unwrap();
            let (b, _) = sys.refine(&bumped, 1, 500).unwrap();
            assert!(sys.same_point(&a, &b).unwrap());
            assert!(a.iter().zip(&b).all(|(x, y)| x.entries_eq(y)));
        }
    }
}
