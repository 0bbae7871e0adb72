//! Verification campaigns: Theorem A over every `(p, d)` case of each corpus
//! group, and implication suites for the supporting lemmas and theorems.
//!
//! Groups are processed independently (optionally on a thread pool) and the
//! results merged in corpus order, so reports do not depend on `jobs`.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_power_of, p_part, prime_divisors};
use crate::bits::BitSet;
use crate::corpus::{constructors, CorpusEntry};
use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::lattice::{NormalLattice, Quotient};
use crate::perm::Perm;
use crate::props::l_pi_holds;
use crate::structure::{
    all_subgroups_of_p_group, cyclic_subgroups_of_order4, is_p_soluble, is_p_supersoluble,
    is_p_supersoluble_above, is_quaternion_free, o_p_prime_p_index, sylow_subgroup, z_u_index,
    z_u_p_index,
};

#[derive(Clone, Debug)]
pub struct HarnessOptions {
    pub seed: u64,
    /// Subgroup samples and per-group instance lists longer than this are
    /// sampled down uniformly.
    pub subgroup_bound: usize,
    /// Random 2-generated subgroups added to each group's subgroup sample.
    pub random_subgroups: usize,
    pub jobs: usize,
    /// Overrides the limits carried by corpus groups.
    pub limits: Option<Limits>,
    /// Adds S5 and S6 to the nonabelian-socle suite when absent from the
    /// corpus.
    pub socle_landmarks: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            seed: 1,
            subgroup_bound: 100,
            random_subgroups: 16,
            jobs: 1,
            limits: None,
            socle_landmarks: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Verified,
    HypothesisFailed,
    /// Hypotheses (1) and (2) hold, no size condition does, and the
    /// conclusion fails.
    Sharpness,
    Violation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeConditions {
    pub d_equals_p: bool,
    pub d_le_opp_part_over_p: bool,
    pub d_squared_le_sylow: bool,
}

impl SizeConditions {
    pub fn any(&self) -> bool {
        self.d_equals_p || self.d_le_opp_part_over_p || self.d_squared_le_sylow
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremACase {
    pub group: String,
    pub order: u64,
    pub p: u64,
    pub d: u64,
    pub sylow_order: u64,
    pub opp_p_part: u64,
    pub size_conditions: SizeConditions,
    pub hyp1: bool,
    pub hyp2_applicable: bool,
    pub hyp2: bool,
    pub conclusion: bool,
    pub status: CaseStatus,
    /// p-supersoluble although hypothesis (1) fails; informational only.
    pub converse: bool,
}

impl TheoremACase {
    fn classify(&mut self) {
        let hyps = self.hyp1 && (!self.hyp2_applicable || self.hyp2);
        self.status = match (hyps, self.size_conditions.any(), self.conclusion) {
            (true, true, false) => CaseStatus::Violation,
            (true, true, true) => CaseStatus::Verified,
            (true, false, false) => CaseStatus::Sharpness,
            _ => CaseStatus::HypothesisFailed,
        };
        self.converse = self.conclusion && !self.hyp1;
    }
}

/// The statements checked by the lemma suites, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// ℒ-Π for `H` gives ℒ-Π for `HN`, `N ⊴ G`.
    LpiJoinNormal,
    /// ℒ-Π for `H` gives ℒ-Π for `HN/N` in `G/N`.
    LpiQuotientImage,
    /// If `N ≤ H` or `(|H|, |N|) = 1`: ℒ-Π for `H` iff for `HN/N`.
    LpiQuotientEquivalence,
    /// `p`-soluble `G`: `|G/O_p'p|_p < |O_p'p|_p`.
    OppPPartBound,
    /// `N ≤ Z_Up(G)` iff the order-`p` (and, when not quaternion-free,
    /// cyclic order-4) subgroups of a Sylow of `N` lie in `Z_Up(G)`.
    HypercenterSylowCriterion,
    /// `N` a product of nonabelian simple groups with `C_G(N) = 1`:
    /// `|G/N|_p < |N|_p`.
    NonabelianSocleBound,
    /// `|N| = |K| = p`, `N` minimal normal: ℒ-Π for `KN` gives it for `K`.
    LpiOrderPDescent,
    /// Order-`d` subgroups of `P` with ℒ-Π and `d | |N|`, `N` minimal
    /// normal: `|N| = d`, unique among minimal normals of order divisible
    /// by `p` when `d ≥ p²`.
    MinimalNormalOrder,
    /// A nontrivial `p`-subgroup with ℒ-Π inside a minimal normal `N`
    /// forces `N` to be a `p`-group.
    MinimalNormalPGroup,
    /// Normal `p`-subgroup with ℒ-Π order-`p` (and cyclic order-4)
    /// subgroups lies in `Z_U(G)`.
    NormalPSubgroupInZU,
    /// Normal `N` whose Sylow `p` has ℒ-Π order-`p` (and cyclic order-4)
    /// subgroups lies in `Z_Up(G)`.
    NormalSubgroupInZUp,
    /// `p² ≤ d < |P|`, order-`d` subgroups ℒ-Π, minimal normal `N` of order
    /// `d/p`: `G/N` is p-supersoluble.
    QuotientByOrderDOverP,
    /// As above with `|N| = d`.
    QuotientByOrderD,
    /// `p² ≤ d ≤ |P ∩ O_p'p|/p` with order-`d` subgroups ℒ-Π: `G` is
    /// p-supersoluble.
    SupersolubleOppBound,
    /// `p² ≤ d ≤ √|P|` with order-`d` subgroups ℒ-Π: `G` is
    /// p-supersoluble.
    SupersolubleSqrtBound,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::LpiJoinNormal,
        Suite::LpiQuotientImage,
        Suite::LpiQuotientEquivalence,
        Suite::OppPPartBound,
        Suite::HypercenterSylowCriterion,
        Suite::NonabelianSocleBound,
        Suite::LpiOrderPDescent,
        Suite::MinimalNormalOrder,
        Suite::MinimalNormalPGroup,
        Suite::NormalPSubgroupInZU,
        Suite::NormalSubgroupInZUp,
        Suite::QuotientByOrderDOverP,
        Suite::QuotientByOrderD,
        Suite::SupersolubleOppBound,
        Suite::SupersolubleSqrtBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LpiJoinNormal => "lpi-join-normal",
            Suite::LpiQuotientImage => "lpi-quotient-image",
            Suite::LpiQuotientEquivalence => "lpi-quotient-equivalence",
            Suite::OppPPartBound => "opp-p-part-bound",
            Suite::HypercenterSylowCriterion => "hypercenter-sylow-criterion",
            Suite::NonabelianSocleBound => "nonabelian-socle-bound",
            Suite::LpiOrderPDescent => "lpi-order-p-descent",
            Suite::MinimalNormalOrder => "minimal-normal-order",
            Suite::MinimalNormalPGroup => "minimal-normal-p-group",
            Suite::NormalPSubgroupInZU => "normal-p-subgroup-in-zu",
            Suite::NormalSubgroupInZUp => "normal-subgroup-in-zup",
            Suite::QuotientByOrderDOverP => "quotient-by-order-d-over-p",
            Suite::QuotientByOrderD => "quotient-by-order-d",
            Suite::SupersolubleOppBound => "supersoluble-opp-bound",
            Suite::SupersolubleSqrtBound => "supersoluble-sqrt-bound",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceStatus {
    Verified,
    HypothesisFailed,
    Violated,
}

impl InstanceStatus {
    fn of(hypothesis: bool, conclusion: bool) -> Self {
        match (hypothesis, conclusion) {
            (false, _) => InstanceStatus::HypothesisFailed,
            (true, true) => InstanceStatus::Verified,
            (true, false) => InstanceStatus::Violated,
        }
    }

    fn iff(lhs: bool, rhs: bool) -> Self {
        if lhs == rhs {
            InstanceStatus::Verified
        } else {
            InstanceStatus::Violated
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaInstance {
    pub suite: Suite,
    pub group: String,
    pub instance: String,
    pub status: InstanceStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub trials: usize,
    pub verified: usize,
    pub hypothesis_failed: usize,
    pub violated: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteSummary {
    /// At least one instance had its hypothesis satisfied and its
    /// conclusion checked.
    pub fn non_vacuous(&self) -> bool {
        self.verified > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRecord {
    pub group: String,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedGroup {
    pub group: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct CampaignReport {
    pub corpus: Vec<CorpusRecord>,
    pub theorem_a: Vec<TheoremACase>,
    pub lemma_instances: Vec<LemmaInstance>,
    /// Present only for campaigns that ran the lemma suites.
    pub suites: Vec<SuiteSummary>,
    pub skipped: Vec<SkippedGroup>,
    pub elapsed: Duration,
}

impl CampaignReport {
    pub fn theorem_violations(&self) -> impl Iterator<Item = &TheoremACase> {
        self.theorem_a.iter().filter(|c| c.status == CaseStatus::Violation)
    }

    pub fn sharpness_rows(&self) -> impl Iterator<Item = &TheoremACase> {
        self.theorem_a.iter().filter(|c| c.status == CaseStatus::Sharpness)
    }

    pub fn lemma_violations(&self) -> impl Iterator<Item = &LemmaInstance> {
        self.lemma_instances
            .iter()
            .filter(|i| i.status == InstanceStatus::Violated)
    }

    pub fn violations(&self) -> usize {
        self.theorem_violations().count() + self.lemma_violations().count()
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteSummary> {
        self.suites.iter().find(|s| s.suite == suite.name())
    }

    /// 0 when nothing was violated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.violations() == 0 {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Campaign {
    theorem_a: bool,
    lemmas: bool,
}

pub fn verify_theorem_a(corpus: &[CorpusEntry], options: &HarnessOptions) -> Result<CampaignReport> {
    run(corpus, options, Campaign { theorem_a: true, lemmas: false })
}

pub fn verify_lemma_suite(corpus: &[CorpusEntry], options: &HarnessOptions) -> Result<CampaignReport> {
    run(corpus, options, Campaign { theorem_a: false, lemmas: true })
}

/// Theorem A and every lemma suite in one pass.
pub fn verify_all(corpus: &[CorpusEntry], options: &HarnessOptions) -> Result<CampaignReport> {
    run(corpus, options, Campaign { theorem_a: true, lemmas: true })
}

#[derive(Default)]
struct Outcome {
    cases: Vec<TheoremACase>,
    instances: Vec<LemmaInstance>,
    skipped: Option<SkippedGroup>,
}

fn run(corpus: &[CorpusEntry], options: &HarnessOptions, campaign: Campaign) -> Result<CampaignReport> {
    if options.jobs == 0 {
        return Err(Error::InvalidParameter("jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let mut work: Vec<(String, Group, bool)> = corpus
        .iter()
        .map(|e| (e.name.clone(), e.group.clone(), true))
        .collect();
    if campaign.lemmas && options.socle_landmarks {
        for (name, n) in [("S5", 5), ("S6", 6)] {
            if !work.iter().any(|(w, _, _)| w == name) {
                work.push((name.to_string(), constructors::symmetric(n)?, false));
            }
        }
    }
    let process = |(name, g, in_corpus): &(String, Group, bool)| {
        let g = match options.limits {
            Some(l) => g.with_limits(l),
            None => g.clone(),
        };
        let mut out = Outcome::default();
        let result = (|| -> Result<()> {
            let ctx = GroupContext::new(name, &g, options)?;
            if *in_corpus {
                if campaign.theorem_a {
                    out.cases = ctx.theorem_a_cases()?;
                }
                if campaign.lemmas {
                    out.instances = ctx.lemma_instances(false)?;
                }
            } else {
                out.instances = ctx.lemma_instances(true)?;
            }
            Ok(())
        })();
        if let Err(e) = result {
            out = Outcome {
                skipped: Some(SkippedGroup {
                    group: name.clone(),
                    reason: e.to_string(),
                }),
                ..Outcome::default()
            };
        }
        out
    };
    let outcomes: Vec<Outcome> = if options.jobs == 1 {
        work.iter().map(process).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| work.par_iter().map(process).collect())
    };

    let mut report = CampaignReport {
        corpus: corpus
            .iter()
            .map(|e| CorpusRecord {
                group: e.name.clone(),
                order: e.group.order(),
            })
            .collect(),
        ..CampaignReport::default()
    };
    for o in outcomes {
        report.theorem_a.extend(o.cases);
        report.lemma_instances.extend(o.instances);
        report.skipped.extend(o.skipped);
    }
    if campaign.lemmas {
        report.suites = summarize(&report.lemma_instances);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

fn summarize(instances: &[LemmaInstance]) -> Vec<SuiteSummary> {
    let mut by_suite: HashMap<Suite, SuiteSummary> = HashMap::new();
    for i in instances {
        let s = by_suite.entry(i.suite).or_default();
        s.trials += 1;
        match i.status {
            InstanceStatus::Verified => s.verified += 1,
            InstanceStatus::HypothesisFailed => s.hypothesis_failed += 1,
            InstanceStatus::Violated => {
                s.violated += 1;
                s.first_counterexample
                    .get_or_insert_with(|| format!("{}: {}", i.group, i.instance));
            }
        }
    }
    Suite::ALL
        .iter()
        .map(|&suite| SuiteSummary {
            suite: suite.name().to_string(),
            ..by_suite.remove(&suite).unwrap_or_default()
        })
        .collect()
}

fn describe(g: &Group) -> String {
    if g.is_trivial() {
        return "1".to_string();
    }
    let gens: Vec<String> = g.gens().iter().map(Perm::to_string).collect();
    let full = format!("<{}>", gens.join(", "));
    if full.len() <= 64 {
        full
    } else {
        format!("<order {} #{:016x}>", g.order(), stable_hash(&full))
    }
}

fn stable_hash(s: &str) -> u64 {
    // FNV-1a
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

struct PrimeData {
    p: u64,
    sylow: Group,
    /// `levels[k]` holds the subgroups of the Sylow subgroup of order `p^k`.
    levels: Vec<Vec<Group>>,
    hyp1: RefCell<Vec<Option<bool>>>,
    opp_p_part: u64,
    quaternion_free: RefCell<Option<bool>>,
    cyclic4_lpi: RefCell<Option<bool>>,
    supersoluble: bool,
}

impl PrimeData {
    fn exponent(&self) -> usize {
        self.levels.len() - 1
    }
}

struct GroupContext<'a> {
    name: &'a str,
    g: Group,
    lat: NormalLattice,
    options: &'a HarnessOptions,
    lpi: RefCell<HashMap<BitSet, bool>>,
    primes: Vec<PrimeData>,
}

impl<'a> GroupContext<'a> {
    fn new(name: &'a str, g: &Group, options: &'a HarnessOptions) -> Result<Self> {
        let lat = NormalLattice::new(g)?;
        let mut primes = Vec::new();
        for p in prime_divisors(g.order()) {
            let sylow = sylow_subgroup(g, p)?;
            let levels = all_subgroups_of_p_group(&sylow)?;
            let opp_p_part = p_part(lat.node(o_p_prime_p_index(&lat, p)).order(), p).value;
            primes.push(PrimeData {
                p,
                hyp1: RefCell::new(vec![None; levels.len()]),
                sylow,
                levels,
                opp_p_part,
                quaternion_free: RefCell::new(None),
                cyclic4_lpi: RefCell::new(None),
                supersoluble: is_p_supersoluble(&lat, p),
            });
        }
        Ok(GroupContext {
            name,
            g: g.clone(),
            lat,
            options,
            lpi: RefCell::new(HashMap::new()),
            primes,
        })
    }

    fn lpi(&self, h: &Group) -> Result<bool> {
        let key = self.g.subset_key(h)?;
        if let Some(&v) = self.lpi.borrow().get(&key) {
            return Ok(v);
        }
        let v = l_pi_holds(&self.lat, h)?;
        self.lpi.borrow_mut().insert(key, v);
        Ok(v)
    }

    fn all_lpi<'b>(&self, hs: impl IntoIterator<Item = &'b Group>) -> Result<bool> {
        for h in hs {
            if !self.lpi(h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every subgroup of the Sylow subgroup of order `p^k` has ℒ-Π.
    fn hyp1(&self, pd: &PrimeData, k: usize) -> Result<bool> {
        if let Some(v) = pd.hyp1.borrow()[k] {
            return Ok(v);
        }
        let v = self.all_lpi(&pd.levels[k])?;
        pd.hyp1.borrow_mut()[k] = Some(v);
        Ok(v)
    }

    fn sylow_quaternion_free(&self, pd: &PrimeData) -> Result<bool> {
        if let Some(v) = *pd.quaternion_free.borrow() {
            return Ok(v);
        }
        let v = pd.p != 2 || is_quaternion_free(&pd.sylow)?;
        *pd.quaternion_free.borrow_mut() = Some(v);
        Ok(v)
    }

    fn sylow_cyclic4_lpi(&self, pd: &PrimeData) -> Result<bool> {
        if let Some(v) = *pd.cyclic4_lpi.borrow() {
            return Ok(v);
        }
        let v = pd.p != 2 || self.all_lpi(&cyclic_subgroups_of_order4(&pd.sylow)?)?;
        *pd.cyclic4_lpi.borrow_mut() = Some(v);
        Ok(v)
    }

    fn theorem_a_cases(&self) -> Result<Vec<TheoremACase>> {
        let mut out = Vec::new();
        for pd in &self.primes {
            let sylow_order = pd.sylow.order();
            for k in 1..pd.exponent() {
                let d = pd.p.pow(k as u32);
                let hyp2_applicable = d == 2 && !self.sylow_quaternion_free(pd)?;
                let mut case = TheoremACase {
                    group: self.name.to_string(),
                    order: self.g.order(),
                    p: pd.p,
                    d,
                    sylow_order,
                    opp_p_part: pd.opp_p_part,
                    size_conditions: SizeConditions {
                        d_equals_p: d == pd.p,
                        d_le_opp_part_over_p: d * pd.p <= pd.opp_p_part,
                        d_squared_le_sylow: d * d <= sylow_order,
                    },
                    hyp1: self.hyp1(pd, k)?,
                    hyp2_applicable,
                    hyp2: self.sylow_cyclic4_lpi(pd)?,
                    conclusion: pd.supersoluble,
                    status: CaseStatus::HypothesisFailed,
                    converse: false,
                };
                case.classify();
                out.push(case);
            }
        }
        Ok(out)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.options.seed ^ stable_hash(self.name) ^ salt)
    }

    /// Keeps at most `subgroup_bound` items, chosen uniformly, in their
    /// original relative order.
    fn bounded<T>(&self, items: Vec<T>, salt: u64) -> Vec<T> {
        let bound = self.options.subgroup_bound;
        if items.len() <= bound {
            return items;
        }
        let mut keep = sample(&mut self.rng(salt), items.len(), bound).into_vec();
        keep.sort_unstable();
        let mut slots: Vec<Option<T>> = items.into_iter().map(Some).collect();
        keep.into_iter().map(|i| slots[i].take().unwrap()).collect()
    }

    /// Cyclic subgroups, subgroups of the chosen Sylow subgroups, normal
    /// subgroups, and a few random 2-generated subgroups; deduplicated and
    /// in canonical order.
    fn subgroup_sample(&self) -> Result<Vec<Group>> {
        let els = self.g.elements()?;
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut out: Vec<Group> = Vec::new();
        let mut add = |h: Group| -> Result<()> {
            if seen.insert(self.g.subset_key(&h)?) {
                out.push(h);
            }
            Ok(())
        };
        for x in els {
            add(self.g.subgroup_unchecked([x.clone()]))?;
        }
        for pd in &self.primes {
            for level in &pd.levels {
                for h in level {
                    add(h.clone())?;
                }
            }
        }
        for n in self.lat.nodes() {
            add(n.clone())?;
        }
        let mut rng = self.rng(0x5a3b);
        for _ in 0..self.options.random_subgroups {
            let x = els[rng.gen_range(0..els.len())].clone();
            let y = els[rng.gen_range(0..els.len())].clone();
            add(self.g.subgroup_unchecked([x, y]))?;
        }
        out.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements().unwrap().cmp(b.elements().unwrap()))
        });
        Ok(self.bounded(out, 0x5a3c))
    }

    fn minimal_normal(&self) -> Vec<usize> {
        self.lat.upper_covers(self.lat.trivial()).to_vec()
    }

    fn instance(&self, suite: Suite, instance: String, status: InstanceStatus) -> LemmaInstance {
        LemmaInstance {
            suite,
            group: self.name.to_string(),
            instance,
            status,
        }
    }

    fn lemma_instances(&self, socle_only: bool) -> Result<Vec<LemmaInstance>> {
        let mut out = Vec::new();
        self.nonabelian_socle(&mut out)?;
        if !socle_only {
            let sample = self.subgroup_sample()?;
            self.lpi_transfer(&sample, &mut out)?;
            self.opp_bound(&mut out);
            self.hypercenter_criteria(&mut out)?;
            self.minimal_normal_statements(&sample, &mut out)?;
            self.order_d_statements(&mut out)?;
        }
        out.sort_by_key(|i| i.suite);
        Ok(out)
    }

    fn lpi_transfer(&self, sample: &[Group], out: &mut Vec<LemmaInstance>) -> Result<()> {
        let g = &self.g;
        let mut pairs = Vec::new();
        for h in sample {
            for n in 0..self.lat.len() {
                pairs.push((h, n));
            }
        }
        for (h, n) in self.bounded(pairs, 0x1001) {
            let nn = self.lat.node(n);
            let hyp = self.lpi(h)?;
            let hn = g.subgroup_unchecked(h.gens().iter().chain(nn.gens()).cloned());
            let concl = !hyp || self.lpi(&hn)?;
            out.push(self.instance(
                Suite::LpiJoinNormal,
                format!("H={} N={}", describe(h), describe(nn)),
                InstanceStatus::of(hyp, concl),
            ));
        }

        // quotients by proper nontrivial normal subgroups
        let mut pairs = Vec::new();
        for n in 0..self.lat.len() {
            if n != self.lat.trivial() && n != self.lat.top() {
                pairs.extend(sample.iter().map(|h| (h, n)));
            }
        }
        let mut quotients: HashMap<usize, (Quotient, GroupContext)> = HashMap::new();
        for (h, n) in self.bounded(pairs, 0x2000) {
            let nn = self.lat.node(n);
            if !quotients.contains_key(&n) {
                let q = Quotient::new(g, nn)?;
                let qctx = GroupContext {
                    name: self.name,
                    g: q.group().clone(),
                    lat: NormalLattice::new(q.group())?,
                    options: self.options,
                    lpi: RefCell::new(HashMap::new()),
                    primes: Vec::new(),
                };
                quotients.insert(n, (q, qctx));
            }
            let (q, qctx) = &quotients[&n];
            let label = format!("H={} N={}", describe(h), describe(nn));
            let hyp = self.lpi(h)?;
            let image_lpi = qctx.lpi(&q.image_subgroup(h))?;
            out.push(self.instance(
                Suite::LpiQuotientImage,
                label.clone(),
                InstanceStatus::of(hyp, image_lpi),
            ));
            let coprime = crate::perm::gcd(h.order(), nn.order()) == 1;
            let status = if nn.is_subgroup_of(h) || coprime {
                InstanceStatus::iff(hyp, image_lpi)
            } else {
                InstanceStatus::HypothesisFailed
            };
            out.push(self.instance(Suite::LpiQuotientEquivalence, label, status));
        }
        Ok(())
    }

    fn opp_bound(&self, out: &mut Vec<LemmaInstance>) {
        for pd in &self.primes {
            let hyp = is_p_soluble(&self.lat, pd.p);
            let outer = pd.sylow.order() / pd.opp_p_part;
            out.push(self.instance(
                Suite::OppPPartBound,
                format!("p={} |G/Opp|_p={} |Opp|_p={}", pd.p, outer, pd.opp_p_part),
                InstanceStatus::of(hyp, outer < pd.opp_p_part),
            ));
        }
    }

    /// Order-`p` subgroups of a `p`-group, one per subgroup.
    fn order_p_subgroups(&self, p_group: &Group, p: u64) -> Result<Vec<Group>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in p_group.elements()? {
            if x.order() == p {
                let c = self.g.subgroup_unchecked([x.clone()]);
                if seen.insert(self.g.subset_key(&c)?) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }

    /// The Sylow-criterion iff for `Z_Up`, and both hypercenter theorems.
    fn hypercenter_criteria(&self, out: &mut Vec<LemmaInstance>) -> Result<()> {
        let zu = z_u_index(&self.lat);
        for n in 0..self.lat.len() {
            if n == self.lat.trivial() {
                continue;
            }
            let nn = self.lat.node(n);
            for p in prime_divisors(nn.order()) {
                let zup = z_u_p_index(&self.lat, p);
                let zup_group = self.lat.node(zup);
                let sylow = sylow_subgroup(nn, p)?;
                let order_p = self.order_p_subgroups(&sylow, p)?;
                let qf = p != 2 || is_quaternion_free(&sylow)?;
                let cyclic4 = if qf { Vec::new() } else { cyclic_subgroups_of_order4(&sylow)? };
                let label = format!("N={} p={} P={}", describe(nn), p, describe(&sylow));

                let inside = order_p.iter().chain(&cyclic4).all(|h| h.is_subgroup_of(zup_group));
                out.push(self.instance(
                    Suite::HypercenterSylowCriterion,
                    label.clone(),
                    InstanceStatus::iff(self.lat.le(n, zup), inside),
                ));

                let hyp = self.all_lpi(&order_p)? && (qf || self.all_lpi(&cyclic4)?);
                out.push(self.instance(
                    Suite::NormalSubgroupInZUp,
                    label.clone(),
                    InstanceStatus::of(hyp, self.lat.le(n, zup)),
                ));
                if is_power_of(nn.order(), p) {
                    out.push(self.instance(
                        Suite::NormalPSubgroupInZU,
                        format!("P={} p={}", describe(nn), p),
                        InstanceStatus::of(hyp, self.lat.le(n, zu)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Orders of the factors when `n` is a direct product of nonabelian
    /// simple groups, `None` otherwise.
    fn simple_factors(&self, n: &Group) -> Result<Option<Vec<u64>>> {
        // 60 divides the order of every such product
        if n.order() % 60 != 0 {
            return Ok(None);
        }
        let nlat = NormalLattice::new(n)?;
        let minimal = nlat.upper_covers(nlat.trivial()).to_vec();
        let mut orders = Vec::new();
        let mut product = nlat.trivial();
        for &m in &minimal {
            let w = nlat.node(m);
            if w.is_abelian() || NormalLattice::new(w)?.len() != 2 {
                return Ok(None);
            }
            orders.push(w.order());
            product = nlat.join(product, m);
        }
        let total: u64 = orders.iter().product();
        Ok((product == nlat.top() && total == n.order()).then_some(orders))
    }

    fn nonabelian_socle(&self, out: &mut Vec<LemmaInstance>) -> Result<()> {
        for n in 0..self.lat.len() {
            if n == self.lat.trivial() {
                continue;
            }
            let nn = self.lat.node(n);
            let factors = self.simple_factors(nn)?;
            let centralizer_trivial = match factors {
                Some(_) => self.g.centralizer(nn)?.is_trivial(),
                None => false,
            };
            for pd in &self.primes {
                let p = pd.p;
                let hyp = centralizer_trivial
                    && factors.as_ref().is_some_and(|f| f.iter().all(|w| w % p == 0));
                let inner = p_part(nn.order(), p).value;
                let outer = p_part(self.g.order() / nn.order(), p).value;
                out.push(self.instance(
                    Suite::NonabelianSocleBound,
                    format!("N={} p={} |G/N|_p={} |N|_p={}", describe(nn), p, outer, inner),
                    InstanceStatus::of(hyp, outer < inner),
                ));
            }
        }
        Ok(())
    }

    fn minimal_normal_statements(&self, sample: &[Group], out: &mut Vec<LemmaInstance>) -> Result<()> {
        let g = &self.g;
        let minimal = self.minimal_normal();
        for &n in &minimal {
            let nn = self.lat.node(n);
            let n_order = nn.order();
            if crate::arith::is_prime(n_order) {
                let p = n_order;
                for k in sample.iter().filter(|k| k.order() == p) {
                    let kn = g.subgroup_unchecked(k.gens().iter().chain(nn.gens()).cloned());
                    let hyp = self.lpi(&kn)?;
                    let concl = !hyp || self.lpi(k)?;
                    out.push(self.instance(
                        Suite::LpiOrderPDescent,
                        format!("K={} N={}", describe(k), describe(nn)),
                        InstanceStatus::of(hyp, concl),
                    ));
                }
            }
            let inside: Vec<&Group> = sample
                .iter()
                .filter(|h| !h.is_trivial() && is_prime_power(h.order()))
                .filter(|h| h.is_subgroup_of(nn))
                .collect();
            for h in self.bounded(inside, 0x3000 + n as u64) {
                let p = prime_divisors(h.order())[0];
                let hyp = self.lpi(h)?;
                out.push(self.instance(
                    Suite::MinimalNormalPGroup,
                    format!("H={} N={}", describe(h), describe(nn)),
                    InstanceStatus::of(hyp, is_power_of(n_order, p)),
                ));
            }
        }

        for pd in &self.primes {
            let p = pd.p;
            for k in 1..=pd.exponent() {
                let d = p.pow(k as u32);
                for &n in &minimal {
                    let nn = self.lat.node(n);
                    if nn.order() % d != 0 {
                        continue;
                    }
                    let hyp = self.hyp1(pd, k)?;
                    let unique = minimal
                        .iter()
                        .filter(|&&m| self.lat.node(m).order() % p == 0)
                        .count()
                        == 1;
                    let concl = nn.order() == d && (d < p * p || unique);
                    out.push(self.instance(
                        Suite::MinimalNormalOrder,
                        format!("p={} d={} N={}", p, d, describe(nn)),
                        InstanceStatus::of(hyp, concl),
                    ));
                }
            }
        }
        Ok(())
    }

    fn order_d_statements(&self, out: &mut Vec<LemmaInstance>) -> Result<()> {
        let minimal = self.minimal_normal();
        for pd in &self.primes {
            let p = pd.p;
            let sylow_order = pd.sylow.order();
            for k in 2..pd.exponent() {
                let d = p.pow(k as u32);
                let hyp1 = self.hyp1(pd, k)?;
                for &n in &minimal {
                    let nn = self.lat.node(n);
                    let suite = if nn.order() * p == d {
                        Suite::QuotientByOrderDOverP
                    } else if nn.order() == d {
                        Suite::QuotientByOrderD
                    } else {
                        continue;
                    };
                    out.push(self.instance(
                        suite,
                        format!("p={} d={} N={}", p, d, describe(nn)),
                        InstanceStatus::of(hyp1, is_p_supersoluble_above(&self.lat, n, p)),
                    ));
                }
                let label = format!("p={} d={} |P|={} |Opp|_p={}", p, d, sylow_order, pd.opp_p_part);
                out.push(self.instance(
                    Suite::SupersolubleOppBound,
                    label.clone(),
                    InstanceStatus::of(hyp1 && d * p <= pd.opp_p_part, pd.supersoluble),
                ));
                out.push(self.instance(
                    Suite::SupersolubleSqrtBound,
                    label,
                    InstanceStatus::of(hyp1 && d * d <= sylow_order, pd.supersoluble),
                ));
            }
        }
        Ok(())
    }
}

fn is_prime_power(n: u64) -> bool {
    prime_divisors(n).len() == 1
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Record<'a> {
    Corpus(&'a CorpusRecord),
    TheoremA(&'a TheoremACase),
    Lemma(&'a LemmaInstance),
    Suite(&'a SuiteSummary),
    Skipped(&'a SkippedGroup),
    Summary {
        groups: usize,
        theorem_a_cases: usize,
        theorem_a_violations: usize,
        sharpness_rows: usize,
        converse_observations: usize,
        lemma_instances: usize,
        lemma_violations: usize,
        skipped: usize,
    },
}

/// One JSON object per line; no timing, so equal inputs give equal bytes.
pub fn render_jsonl(report: &CampaignReport) -> String {
    let mut s = String::new();
    let mut push = |r: Record| {
        s.push_str(&serde_json::to_string(&r).expect("records serialize"));
        s.push('\n');
    };
    report.corpus.iter().for_each(|r| push(Record::Corpus(r)));
    report.theorem_a.iter().for_each(|r| push(Record::TheoremA(r)));
    report.lemma_instances.iter().for_each(|r| push(Record::Lemma(r)));
    report.suites.iter().for_each(|r| push(Record::Suite(r)));
    report.skipped.iter().for_each(|r| push(Record::Skipped(r)));
    push(Record::Summary {
        groups: report.corpus.len(),
        theorem_a_cases: report.theorem_a.len(),
        theorem_a_violations: report.theorem_violations().count(),
        sharpness_rows: report.sharpness_rows().count(),
        converse_observations: report.theorem_a.iter().filter(|c| c.converse).count(),
        lemma_instances: report.lemma_instances.len(),
        lemma_violations: report.lemma_violations().count(),
        skipped: report.skipped.len(),
    });
    s
}

fn case_line(c: &TheoremACase) -> String {
    format!(
        "{} (order {}) p={} d={} |P|={} |Opp|_p={} hyp1={} hyp2={}{} p-supersoluble={}",
        c.group,
        c.order,
        c.p,
        c.d,
        c.sylow_order,
        c.opp_p_part,
        c.hyp1,
        c.hyp2,
        if c.hyp2_applicable { "" } else { " (n/a)" },
        c.conclusion
    )
}

pub fn render_text(report: &CampaignReport) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "groups: {}", report.corpus.len()).unwrap();
    writeln!(w, "elapsed: {:.2?}", report.elapsed).unwrap();
    if !report.theorem_a.is_empty() || report.suites.is_empty() {
        let count = |st: CaseStatus| report.theorem_a.iter().filter(|c| c.status == st).count();
        writeln!(w, "\ntheorem A: {} cases", report.theorem_a.len()).unwrap();
        writeln!(w, "  verified          {}", count(CaseStatus::Verified)).unwrap();
        writeln!(w, "  hypothesis-failed {}", count(CaseStatus::HypothesisFailed)).unwrap();
        writeln!(w, "  sharpness         {}", count(CaseStatus::Sharpness)).unwrap();
        writeln!(w, "  violation         {}", count(CaseStatus::Violation)).unwrap();
        for c in report.theorem_violations() {
            writeln!(w, "  VIOLATION {}", case_line(c)).unwrap();
        }
        for c in report.sharpness_rows() {
            writeln!(w, "  sharpness {}", case_line(c)).unwrap();
        }
        let converse: Vec<&TheoremACase> = report.theorem_a.iter().filter(|c| c.converse).collect();
        writeln!(
            w,
            "  converse observations (informational, not asserted by the theorem): {} cases \
             p-supersoluble with hypothesis (1) failing",
            converse.len()
        )
        .unwrap();
    }
    if !report.suites.is_empty() {
        writeln!(w, "\nsuites:").unwrap();
        writeln!(
            w,
            "  {:<28} {:>7} {:>8} {:>8} {:>8}",
            "suite", "trials", "verified", "hyp-fail", "violated"
        )
        .unwrap();
        for st in &report.suites {
            writeln!(
                w,
                "  {:<28} {:>7} {:>8} {:>8} {:>8}{}",
                st.suite,
                st.trials,
                st.verified,
                st.hypothesis_failed,
                st.violated,
                if st.non_vacuous() { "" } else { "  (vacuous only)" }
            )
            .unwrap();
            if let Some(c) = &st.first_counterexample {
                writeln!(w, "    first counterexample: {c}").unwrap();
            }
        }
    }
    if !report.skipped.is_empty() {
        writeln!(w, "\nskipped:").unwrap();
        for sk in &report.skipped {
            writeln!(w, "  {}: {}", sk.group, sk.reason).unwrap();
        }
    }
    let v = report.violations();
    writeln!(w, "\nresult: {}", if v == 0 { "PASS".to_string() } else { format!("FAIL ({v} violations)") })
        .unwrap();
    s
}

pub fn render(report: &CampaignReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Jsonl => render_jsonl(report),
    }
}

pub fn emit_report(report: &CampaignReport, path: &Path, format: ReportFormat) -> Result<()> {
    std::fs::write(path, render(report, format)).map_err(|e| Error::from(e).in_file(path))
}
