use std::collections::BTreeSet;
use std::fmt;

use super::{classify_semi_imprimitive, EnumerationMode, FragmentContext, FragmentRecord};
use crate::bigraph::{subset_masks, BipartiteGraph, Family, Side, VertexSet};
use crate::bitset::BitSet;
use crate::exactmath::{binomial, gaussian_binomial};
use crate::groupact::{is_imprimitive_set, is_part_transitive, set_orbit, GroupAction};
use crate::oracle::{alpha_nontrivial, enumerate_max_nontrivial, epsilon_bruteforce, NontrivialMisResult};
use crate::{Budget, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub witness: Vec<String>,
    pub note: String,
}

impl CheckEntry {
    fn new(name: &str, status: CheckStatus) -> Self {
        CheckEntry {
            name: name.to_string(),
            status,
            expected: String::new(),
            actual: String::new(),
            witness: Vec::new(),
            note: String::new(),
        }
    }

    fn skipped(name: &str, note: impl Into<String>) -> Self {
        CheckEntry::new(name, CheckStatus::Skipped).note(note)
    }

    fn compare(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckEntry {
            expected,
            actual,
            ..CheckEntry::new(name, status)
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn witness(mut self, witness: Vec<String>) -> Self {
        self.witness = witness;
        self
    }
}

/// Named checks, kept sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.get(name).map(|e| e.status)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.count(CheckStatus::Fail) == 0
    }
}

fn or_dash(s: &str) -> &str {
    if s.is_empty() {
        "-"
    } else {
        s
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report: {}", self.title)?;
        for e in &self.entries {
            writeln!(f, "[{}]", e.name)?;
            writeln!(f, "status: {}", e.status)?;
            writeln!(f, "expected: {}", or_dash(&e.expected))?;
            writeln!(f, "actual: {}", or_dash(&e.actual))?;
            writeln!(f, "witness: {}", or_dash(&e.witness.join(", ")))?;
            writeln!(f, "note: {}", or_dash(&e.note))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Enables the closed-form bound and extremal-structure checks.
    pub family: Option<Family>,
    pub budget: Budget,
    /// Largest fragment size scanned when a part is too big for an
    /// exhaustive census.
    pub census_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            family: None,
            budget: Budget::default(),
            census_size: 3,
        }
    }
}

struct Census {
    fragments: Vec<FragmentRecord>,
    /// `None` for an exhaustive scan, else the largest size scanned.
    limit: Option<usize>,
}

impl Census {
    fn scope(&self) -> String {
        match self.limit {
            None => "exhaustive".into(),
            Some(k) => format!("verified up to size {k} plus orbit closures"),
        }
    }
}

fn size_list(fragments: &[FragmentRecord]) -> String {
    let sizes: BTreeSet<usize> = fragments.iter().map(FragmentRecord::len).collect();
    let parts: Vec<String> = sizes.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn census(
    ctx: &FragmentContext<'_>,
    action: &GroupAction,
    side: Side,
    opts: &VerifyOptions,
) -> Result<Census> {
    let budget = &opts.budget;
    let part = ctx.graph().part_len(side);
    let exhaustive = part <= budget.exhaustive_part;
    let mut fragments = if exhaustive {
        ctx.enumerate(side, EnumerationMode::Exhaustive, budget)?
    } else {
        let found = ctx.enumerate(side, EnumerationMode::Bounded(opts.census_size), budget)?;
        let mut sets: BTreeSet<VertexSet> = BTreeSet::new();
        for f in &found {
            if sets.contains(&f.members) {
                continue;
            }
            sets.extend(set_orbit(action, &f.members, budget.subsets)?);
        }
        // φ of the small fragments on the other side lands here
        let other = ctx.enumerate(
            side.opposite(),
            EnumerationMode::Bounded(opts.census_size),
            budget,
        )?;
        for f in &other {
            let image = ctx.phi(f)?;
            if !sets.contains(&image.members) {
                sets.extend(set_orbit(action, &image.members, budget.subsets)?);
            }
        }
        sets.into_iter()
            .map(|s| ctx.record(&s))
            .collect::<Result<Vec<_>>>()?
    };
    classify_semi_imprimitive(&mut fragments, action, budget.subsets)?;
    fragments.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(Census {
        fragments,
        limit: (!exhaustive).then_some(opts.census_size),
    })
}

fn labels(g: &BipartiteGraph, set: &VertexSet) -> String {
    format!("{}:{{{}}}", set.side, g.set_labels(set).join(" "))
}

fn mis_labels(g: &BipartiteGraph, r: &NontrivialMisResult) -> Vec<String> {
    vec![labels(g, &r.a), labels(g, &r.b)]
}

/// Maximum nontrivial independent sets predicted by the equality cases of
/// the family bounds, as `(A, B)` bit pairs. `None` when the family has no
/// characterization.
fn expected_extremal(family: &Family, g: &BipartiteGraph) -> Option<Vec<(BitSet, BitSet)>> {
    let single_x = |x: usize| {
        (
            BitSet::from_indices(g.x_len(), [x]),
            g.row(Side::X, x).complement(),
        )
    };
    let single_y = |y: usize| {
        (
            g.row(Side::Y, y).complement(),
            BitSet::from_indices(g.y_len(), [y]),
        )
    };
    let mut out: Vec<(BitSet, BitSet)> = (0..g.x_len()).map(single_x).collect();
    match *family {
        Family::Sets { n, a, b, t } => {
            if binomial(n, a as i64) == binomial(n, b as i64) {
                out.extend((0..g.y_len()).map(single_y));
                let by_mask = |k: u32, keep: &dyn Fn(u64) -> bool| {
                    let masks = subset_masks(n, k);
                    BitSet::from_indices(masks.len(), (0..masks.len()).filter(|&i| keep(masks[i])))
                };
                if (a, b, t) == (2, 2, 1) {
                    for i in 0..n {
                        let star = by_mask(2, &|m| m >> i & 1 == 1);
                        out.push((star.clone(), star));
                    }
                }
                if a == b && a + 2 == n && t + 3 == n {
                    for big in subset_masks(n, n - 1) {
                        let sub = by_mask(a, &|m| m & !big == 0);
                        out.push((sub.clone(), sub));
                    }
                }
            }
        }
        Family::Subspaces { n, q, a, b, .. } => {
            if gaussian_binomial(n, a as i64, q).ok()? == gaussian_binomial(n, b as i64, q).ok()? {
                out.extend((0..g.y_len()).map(single_y));
            }
        }
        Family::Permutations { .. } => out.extend((0..g.y_len()).map(single_y)),
        Family::Circulant { .. } => return None,
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// Runs the hypothesis checks and conclusions of the main theorem on `g`
/// under `action`, plus the family-specific bound and equality cases when
/// `opts.family` is set. Failures of any kind become report entries.
pub fn verify_theorem(g: &BipartiteGraph, action: &GroupAction, opts: &VerifyOptions) -> VerificationReport {
    let title = match &opts.family {
        Some(f) => f.to_string(),
        None => format!("graph({},{})", g.x_len(), g.y_len()),
    };
    let mut entries = Vec::new();
    let push = |entries: &mut Vec<CheckEntry>, name: &str, ok: bool, note: &str| {
        let e = if ok {
            CheckEntry::new(name, CheckStatus::Pass)
        } else {
            CheckEntry::skipped(name, note)
        };
        entries.push(e);
    };

    let connected = g.is_connected();
    let complete = g.is_complete();
    let degrees = g.biregular_degrees();
    let transitive = is_part_transitive(g, action);
    push(
        &mut entries,
        "hypothesis.connected",
        connected,
        "hypothesis discrepancy: graph is disconnected",
    );
    push(
        &mut entries,
        "hypothesis.non-complete",
        !complete,
        "hypothesis not met: graph is complete",
    );
    push(
        &mut entries,
        "hypothesis.biregular",
        degrees.is_some(),
        "hypothesis not met: parts are not regular",
    );
    push(
        &mut entries,
        "hypothesis.part-transitive",
        transitive,
        "hypothesis not met: action is not transitive on both parts",
    );

    let family_bound = opts.family.as_ref().map(|f| f.bound());
    let family_skip = |name: &str| -> Option<CheckEntry> {
        match &family_bound {
            None => Some(CheckEntry::skipped(name, "no family given")),
            Some(Err(e)) => Some(CheckEntry::skipped(name, format!("hypothesis not met: {e}"))),
            Some(Ok(_)) => None,
        }
    };

    if complete {
        for name in [
            "alpha.family-bound",
            "alpha.formula",
            "extremal.structure",
            "fragments.dichotomy",
            "hypothesis.fragments-primitive",
        ] {
            entries.push(CheckEntry::skipped(name, "graph is complete"));
        }
        return finish(title, entries);
    }
    let mis = alpha_nontrivial(g).expect("non-complete graph");
    let alpha = mis.size;
    let ctx = FragmentContext::with_alpha(g, alpha);

    // orient so that X is the smaller part
    let small = if g.x_len() <= g.y_len() { Side::X } else { Side::Y };
    let (small_len, big_len) = (g.part_len(small), g.part_len(small.opposite()));
    let d_small = degrees.map(|(dx, dy)| if small == Side::X { dx } else { dy });

    entries.push(match &family_bound {
        Some(Ok(bound)) => {
            CheckEntry::compare("alpha.family-bound", bound, alpha).witness(mis_labels(g, &mis))
        }
        _ => family_skip("alpha.family-bound").expect("bound unavailable"),
    });

    entries.push(epsilon_duality(g, alpha, &opts.budget));

    let (censuses, extremal) = rayon::join(
        || {
            (
                census(&ctx, action, Side::X, opts),
                census(&ctx, action, Side::Y, opts),
            )
        },
        || extremal_checks(&ctx, opts, family_skip("extremal.structure")),
    );
    entries.extend(extremal);

    let censuses = match censuses {
        (Ok(x), Ok(y)) => Some((x, y)),
        (Err(e), _) | (_, Err(e)) => {
            for name in [
                "census.X",
                "census.Y",
                "fragments.balanced",
                "fragments.dichotomy",
                "fragments.phi-involution",
                "hypothesis.fragments-primitive",
            ] {
                entries.push(CheckEntry::skipped(name, format!("census unavailable: {e}")));
            }
            None
        }
    };

    let mut primitive = true;
    if let Some((cx, cy)) = &censuses {
        for (name, c) in [("census.X", cx), ("census.Y", cy)] {
            entries.push(CheckEntry {
                actual: format!(
                    "{} fragments, sizes {}",
                    c.fragments.len(),
                    size_list(&c.fragments)
                ),
                ..CheckEntry::new(name, CheckStatus::Pass).note(c.scope())
            });
        }
        let mut imprimitive = Vec::new();
        for f in cx.fragments.iter().chain(&cy.fragments) {
            let part = g.part_len(f.side);
            if f.len() > 1
                && f.len() < part
                && is_imprimitive_set(action, &f.members, opts.budget.subsets).unwrap_or(false)
            {
                imprimitive.push(labels(g, &f.members));
            }
        }
        primitive = imprimitive.is_empty();
        entries.push(if primitive {
            CheckEntry::new("hypothesis.fragments-primitive", CheckStatus::Pass).note(cx.scope())
        } else {
            CheckEntry::skipped(
                "hypothesis.fragments-primitive",
                "hypothesis not met: an imprimitive fragment exists",
            )
            .witness(imprimitive)
        });

        entries.push(phi_check(&ctx, cx, cy));
        entries.push(balanced_check(g, cx, cy, degrees, small_len == big_len));
    }

    let theorem_applies = !complete && degrees.is_some() && transitive && primitive;
    entries.push(match d_small {
        Some(d) if theorem_applies => {
            CheckEntry::compare("alpha.formula", big_len + 1 - d, alpha).witness(mis_labels(g, &mis))
        }
        Some(d) => CheckEntry {
            expected: (big_len + 1 - d).to_string(),
            actual: alpha.to_string(),
            ..CheckEntry::skipped("alpha.formula", "theorem hypotheses not met")
        },
        None => CheckEntry::skipped("alpha.formula", "parts are not regular"),
    });

    if let Some((cx, cy)) = &censuses {
        entries.push(if !theorem_applies {
            CheckEntry::skipped("fragments.dichotomy", "theorem hypotheses not met")
        } else {
            let (cs, co) = if small == Side::X { (cx, cy) } else { (cy, cx) };
            dichotomy_check(g, cs, co, small_len, big_len, d_small.expect("regular"))
        });
    }
    finish(title, entries)
}

fn finish(title: String, mut entries: Vec<CheckEntry>) -> VerificationReport {
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    VerificationReport { title, entries }
}

fn epsilon_duality(g: &BipartiteGraph, alpha: usize, budget: &Budget) -> CheckEntry {
    let name = "alpha.epsilon-duality";
    if g.x_len().max(g.y_len()) > budget.exhaustive_part {
        return CheckEntry::skipped(name, "parts exceed the exhaustive limit");
    }
    match (epsilon_bruteforce(g, Side::X), epsilon_bruteforce(g, Side::Y)) {
        (Ok(ex), Ok(ey)) => {
            let lhs = g.y_len() as i64 - ex;
            let rhs = g.x_len() as i64 - ey;
            CheckEntry::compare(name, format!("{alpha} {alpha}"), format!("{lhs} {rhs}"))
                .note("|Y|-eps(X) and |X|-eps(Y) against alpha")
        }
        (Err(e), _) | (_, Err(e)) => CheckEntry::skipped(name, e.to_string()),
    }
}

fn extremal_checks(
    ctx: &FragmentContext<'_>,
    opts: &VerifyOptions,
    skip: Option<CheckEntry>,
) -> Vec<CheckEntry> {
    let g = ctx.graph();
    let all = match enumerate_max_nontrivial(g, &opts.budget) {
        Ok(all) => all,
        Err(e) => {
            return vec![
                CheckEntry::skipped("extremal.decomposition", format!("enumeration unavailable: {e}")),
                skip.unwrap_or_else(|| {
                    CheckEntry::skipped("extremal.structure", format!("enumeration unavailable: {e}"))
                }),
            ]
        }
    };
    let mut out = Vec::new();
    let bad: Vec<String> = all
        .iter()
        .filter(|r| {
            let frag = ctx.is_fragment(&r.a).unwrap_or(false);
            let phi = g.neighborhood_bits(Side::X, &r.a.bits).complement();
            !frag || phi != r.b.bits
        })
        .map(|r| mis_labels(g, r).join(" "))
        .collect();
    out.push(CheckEntry {
        expected: "every set is F + phi(F)".into(),
        actual: format!("{} of {} sets decompose", all.len() - bad.len(), all.len()),
        witness: bad.clone(),
        ..CheckEntry::new(
            "extremal.decomposition",
            if bad.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        )
    });
    out.push(match skip {
        Some(e) => e,
        None => {
            let family = opts.family.expect("family present when not skipped");
            match expected_extremal(&family, g) {
                None => CheckEntry::skipped(
                    "extremal.structure",
                    "no equality characterization for this family",
                ),
                Some(expected) => {
                    let actual: Vec<(BitSet, BitSet)> =
                        all.iter().map(|r| (r.a.bits.clone(), r.b.bits.clone())).collect();
                    let mut sorted = actual.clone();
                    sorted.sort();
                    let missing = expected
                        .iter()
                        .filter(|p| sorted.binary_search(p).is_err())
                        .count();
                    let extra: Vec<String> = all
                        .iter()
                        .filter(|r| {
                            expected
                                .binary_search(&(r.a.bits.clone(), r.b.bits.clone()))
                                .is_err()
                        })
                        .map(|r| mis_labels(g, r).join(" "))
                        .collect();
                    let status = if missing == 0 && extra.is_empty() {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    };
                    CheckEntry {
                        expected: format!("{} sets", expected.len()),
                        actual: format!(
                            "{} sets ({missing} missing, {} unexpected)",
                            sorted.len(),
                            extra.len()
                        ),
                        witness: extra,
                        ..CheckEntry::new("extremal.structure", status)
                    }
                }
            }
        }
    });
    out
}

fn phi_check(ctx: &FragmentContext<'_>, cx: &Census, cy: &Census) -> CheckEntry {
    let g = ctx.graph();
    let mut bad = Vec::new();
    for f in cx.fragments.iter().chain(&cy.fragments) {
        let ok = ctx
            .phi(f)
            .and_then(|p| Ok((ctx.phi(&p)?, p)))
            .map(|(pp, p)| pp.members == f.members && f.len() + p.len() == ctx.alpha())
            .unwrap_or(false);
        if !ok {
            bad.push(labels(g, &f.members));
        }
    }
    let total = cx.fragments.len() + cy.fragments.len();
    CheckEntry {
        expected: format!("{total} involutive pairs summing to {}", ctx.alpha()),
        actual: format!(
            "{} involutive pairs summing to {}",
            total - bad.len(),
            ctx.alpha()
        ),
        witness: bad.clone(),
        ..CheckEntry::new(
            "fragments.phi-involution",
            if bad.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        )
    }
}

/// With equal parts, `ε = d - 1` and no 2-fragments on either side, every
/// nontrivial fragment is balanced.
fn balanced_check(
    g: &BipartiteGraph,
    cx: &Census,
    cy: &Census,
    degrees: Option<(usize, usize)>,
    equal_parts: bool,
) -> CheckEntry {
    let name = "fragments.balanced";
    let Some((dx, _)) = degrees else {
        return CheckEntry::skipped(name, "parts are not regular");
    };
    if !equal_parts {
        return CheckEntry::skipped(name, "parts differ in size");
    }
    let eps_x = cx.fragments.first().map(|f| f.nbhd_size as i64 - f.len() as i64);
    if eps_x != Some(dx as i64 - 1) {
        return CheckEntry::skipped(name, "eps(X) is not d(X)-1");
    }
    if cx.fragments.iter().chain(&cy.fragments).any(|f| f.len() == 2) {
        return CheckEntry::skipped(name, "a 2-fragment exists");
    }
    let nontrivial: Vec<&FragmentRecord> = cx.fragments.iter().filter(|f| !f.is_trivial).collect();
    let bad: Vec<String> = nontrivial
        .iter()
        .filter(|f| !f.is_balanced)
        .map(|f| labels(g, &f.members))
        .collect();
    let balanced: Vec<String> = nontrivial
        .iter()
        .filter(|f| f.is_balanced)
        .map(|f| labels(g, &f.members))
        .collect();
    CheckEntry {
        expected: format!("{} nontrivial fragments balanced", nontrivial.len()),
        actual: format!("{} nontrivial fragments balanced", balanced.len()),
        witness: if bad.is_empty() { balanced } else { bad.clone() },
        ..CheckEntry::new(
            name,
            if bad.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        )
    }
    .note(if nontrivial.is_empty() {
        "no nontrivial fragments".to_string()
    } else {
        cx.scope()
    })
}

/// Sizes of fragments in the smaller part: all 1 when the parts differ;
/// in `{1, |X| - d(X)}` when they are equal, unless some fragment on
/// either side is semi-imprimitive.
fn dichotomy_check(
    g: &BipartiteGraph,
    small: &Census,
    other: &Census,
    small_len: usize,
    big_len: usize,
    d: usize,
) -> CheckEntry {
    let name = "fragments.dichotomy";
    let allowed: BTreeSet<usize> = if small_len < big_len {
        [1].into()
    } else {
        [1, small_len - d].into()
    };
    let allowed_text = format!(
        "sizes in {{{}}}",
        allowed.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    );
    let bad: Vec<&FragmentRecord> = small
        .fragments
        .iter()
        .filter(|f| !allowed.contains(&f.len()))
        .collect();
    let semi: Vec<String> = small
        .fragments
        .iter()
        .chain(&other.fragments)
        .filter(|f| f.is_semi_imprimitive == Some(true))
        .map(|f| labels(g, &f.members))
        .collect();
    let actual = format!("sizes {}", size_list(&small.fragments));
    if bad.is_empty() {
        CheckEntry {
            expected: allowed_text,
            actual,
            ..CheckEntry::new(name, CheckStatus::Pass).note(small.scope())
        }
    } else if small_len == big_len && !semi.is_empty() {
        CheckEntry {
            expected: allowed_text,
            actual,
            witness: semi,
            ..CheckEntry::new(name, CheckStatus::Pass)
                .note("other sizes explained by semi-imprimitive fragments")
        }
    } else {
        CheckEntry {
            expected: allowed_text,
            actual,
            witness: bad.iter().map(|f| labels(g, &f.members)).collect(),
            ..CheckEntry::new(name, CheckStatus::Fail)
        }
    }
}
