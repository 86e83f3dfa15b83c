//! The acceptance grid: one function per criterion, each returning a
//! pass/fail outcome with timing.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autgroup::{
    automorphism_group, brute_force_automorphisms, check_block_stabilizer_criterion, Permutation,
};
use crate::constructions::{
    self, single_entry_fixes, validate_table, z2_tables, Family, LiteralTable, Relocation,
};
use crate::digraph::Digraph;
use crate::error::Result;
use crate::group::{catalog, FiniteGroup, GeneratorSpec};
use crate::mcayley::{
    connection_is_oriented, profile_is_k_regular, ConnectionMatrix, MCayleyDigraph,
};
use crate::par;
use crate::search::{
    search_trivial_aut_digraph, verify_nonexistence_suite, ExploreMode, ExploreOptions,
    RigidityCheck,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteOptions {
    /// Seed for the randomized criteria.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0x5eed }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    /// Checks passed and the run finished within the time limit.
    pub passed: bool,
    pub checks_passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2}: {} ({:.2} s, limit {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = fn(&SuiteOptions) -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str, u64, Check); 11] = [
    (
        1,
        "worked example Z4, m = 2 has |Aut| = 8",
        1,
        worked_example,
    ),
    (
        2,
        "Z2 tables and general family give |Aut| = 2",
        30,
        z2_families,
    ),
    (3, "cyclic families give |Aut| = |G|", 60, cyclic_families),
    (4, "Z2 x Z2 families give |Aut| = 4", 30, klein_families),
    (
        5,
        "two-generator family gives |Aut| = |G|",
        120,
        two_generated_family,
    ),
    (6, "excluded cases are exhausted", 600, nonexistence),
    (
        7,
        "engine agrees with brute force on random digraphs",
        60,
        oracle_equivalence,
    ),
    (
        8,
        "m-Cayley structural properties on random tables",
        60,
        structural_properties,
    ),
    (
        9,
        "block-stabilizer criterion cross-check",
        120,
        block_criterion,
    ),
    (
        10,
        "table corrections are the unique single-entry fixes",
        10,
        corrections_forced,
    ),
    (
        11,
        "rigid-digraph exploration witnesses verify",
        120,
        rigid_exploration,
    ),
];

pub fn run_criterion(id: u8, options: &SuiteOptions) -> Option<CriterionOutcome> {
    let &(id, title, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (checks_passed, detail) = check(options).unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit);
    Some(CriterionOutcome {
        id,
        title,
        passed: checks_passed && elapsed <= limit,
        checks_passed,
        detail,
        elapsed,
        limit,
    })
}

pub fn run_suite(options: &SuiteOptions) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .filter_map(|c| run_criterion(c.0, options))
        .collect()
}

/// The tables `T_{0,0} = T_{1,1} = {x}`, `T_{0,1} = {1, x}`,
/// `T_{1,0} = {x, x²}` over `Z₄`, whose digraph has `|Aut| = 8`.
pub fn worked_example_z4() -> (FiniteGroup, ConnectionMatrix) {
    let g = FiniteGroup::cyclic(4).expect("n >= 1");
    let mut t = ConnectionMatrix::empty(2);
    t.set(0, 0, [1]);
    t.set(1, 1, [1]);
    t.set(0, 1, [0, 1]);
    t.set(1, 0, [1, 2]);
    (g, t)
}

fn worked_example(_: &SuiteOptions) -> Result<(bool, String)> {
    let (g, t) = worked_example_z4();
    let gamma = MCayleyDigraph::build(&g, &t)?;
    let order = automorphism_group(gamma.graph(), None)?.order();
    Ok((order == 8, format!("|Aut| = {order}")))
}

/// One family instance of the acceptance grid.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub label: String,
    pub group: FiniteGroup,
    pub spec: GeneratorSpec,
    pub family: Family,
    pub m: usize,
}

impl FamilyInstance {
    fn new(label: impl Into<String>, group: FiniteGroup, family: Family, m: usize) -> Self {
        let spec = group.generators();
        FamilyInstance {
            label: label.into(),
            group,
            spec,
            family,
            m,
        }
    }
}

fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n).expect("n >= 1")
}

pub fn z2_grid() -> Vec<FamilyInstance> {
    (5..=10)
        .map(|m| FamilyInstance::new("Z2", z(2), Family::Z2Table, m))
        .chain((11..=40).map(|m| FamilyInstance::new("Z2", z(2), Family::Z2General, m)))
        .collect()
}

pub fn cyclic_grid() -> Vec<FamilyInstance> {
    let m2 = (5..=12).map(|n| FamilyInstance::new(format!("Z{n}"), z(n), Family::CyclicM2, 2));
    let general = (3..=10).flat_map(|n| {
        (3..=8).map(move |m| FamilyInstance::new(format!("Z{n}"), z(n), Family::CyclicGeneral, m))
    });
    m2.chain(general).collect()
}

pub fn klein_grid() -> Vec<FamilyInstance> {
    let k = FiniteGroup::direct_product(&z(2), &z(2));
    [(Family::KleinM3, 3), (Family::KleinM4, 4)]
        .into_iter()
        .chain((5..=12).map(|m| (Family::KleinGeneral, m)))
        .map(|(f, m)| FamilyInstance::new("Z2xZ2", k.clone(), f, m))
        .collect()
}

pub fn two_generated_groups() -> Vec<(String, FiniteGroup)> {
    vec![
        ("S3".into(), catalog::symmetric3()),
        ("D4".into(), catalog::dihedral(4).expect("n >= 3")),
        ("D5".into(), catalog::dihedral(5).expect("n >= 3")),
        ("Q8".into(), catalog::quaternion()),
        ("Z2xZ4".into(), FiniteGroup::direct_product(&z(2), &z(4))),
        ("A4".into(), catalog::alternating4()),
    ]
}

pub fn two_generated_grid() -> Vec<FamilyInstance> {
    two_generated_groups()
        .into_iter()
        .flat_map(|(label, g)| {
            (2..=6).map(move |m| {
                FamilyInstance::new(label.clone(), g.clone(), Family::TwoGenerated, m)
            })
        })
        .collect()
}

struct InstanceResult {
    label: String,
    m: usize,
    valid: bool,
    aut_order: u128,
    group_order: usize,
}

fn check_instance(inst: &FamilyInstance) -> Result<InstanceResult> {
    let t = inst.family.emit(&inst.group, &inst.spec, inst.m)?;
    let gamma = MCayleyDigraph::build(&inst.group, &t)?;
    let graph = gamma.graph();
    let valid = graph.is_oriented() && graph.is_k_regular(3) && graph.is_weakly_connected();
    let aut_order = automorphism_group(graph, None)?.order();
    Ok(InstanceResult {
        label: format!("{} {} m={}", inst.label, inst.family, inst.m),
        m: inst.m,
        valid,
        aut_order,
        group_order: inst.group.order(),
    })
}

fn check_grid(grid: &[FamilyInstance]) -> Result<(bool, String)> {
    let results = par::map(grid, check_instance)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.valid || r.aut_order != r.group_order as u128)
        .map(|r| format!("{} (|Aut| = {}, valid = {})", r.label, r.aut_order, r.valid))
        .collect();
    let max_m = results.iter().map(|r| r.m).max().unwrap_or(0);
    let detail = if bad.is_empty() {
        format!(
            "{} instances (m up to {max_m}), all |Aut| = |G|",
            results.len()
        )
    } else {
        format!(
            "{} of {} failed: {}",
            bad.len(),
            results.len(),
            bad.join("; ")
        )
    };
    Ok((bad.is_empty(), detail))
}

fn z2_families(_: &SuiteOptions) -> Result<(bool, String)> {
    check_grid(&z2_grid())
}

fn cyclic_families(_: &SuiteOptions) -> Result<(bool, String)> {
    check_grid(&cyclic_grid())
}

fn klein_families(_: &SuiteOptions) -> Result<(bool, String)> {
    check_grid(&klein_grid())
}

fn two_generated_family(_: &SuiteOptions) -> Result<(bool, String)> {
    check_grid(&two_generated_grid())
}

fn nonexistence(_: &SuiteOptions) -> Result<(bool, String)> {
    let cases = verify_nonexistence_suite(1)?;
    let ok = cases.iter().all(|c| c.confirmed);
    let detail = cases
        .iter()
        .map(|c| {
            let hist: Vec<String> = c
                .outcome
                .counts
                .aut_order_histogram
                .iter()
                .map(|(o, n)| format!("{o}:{n}"))
                .collect();
            format!(
                "{} m={} {:?} {} candidates [{}]",
                c.group,
                c.m,
                c.outcome.status,
                c.outcome.counts.candidates_tested,
                hist.join(" ")
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok((ok, detail))
}

/// A random digraph on `4..=8` vertices: plain random, a circulant with
/// extra arcs, or a disjoint union of copies of a small random digraph.
pub fn random_digraph(rng: &mut ChaCha8Rng) -> Digraph {
    let n = rng.gen_range(4..=8);
    let mut arcs = Vec::new();
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(0.1..0.6);
            for u in 0..n {
                for v in 0..n {
                    if (u != v || rng.gen_bool(0.05)) && rng.gen_bool(p) {
                        arcs.push((u, v));
                    }
                }
            }
        }
        1 => {
            let s: Vec<usize> = (1..n).filter(|_| rng.gen_bool(0.4)).collect();
            for u in 0..n {
                arcs.extend(s.iter().map(|d| (u, (u + d) % n)));
            }
            if rng.gen_bool(0.5) {
                arcs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
        }
        _ => {
            let part = rng.gen_range(2..=4.min(n));
            let copies = n / part;
            let local: Vec<(usize, usize)> = (0..part)
                .flat_map(|u| (0..part).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v)
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            for c in 0..copies {
                arcs.extend(local.iter().map(|&(u, v)| (c * part + u, c * part + v)));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("arcs in range")
}

fn oracle_equivalence(options: &SuiteOptions) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let graphs: Vec<Digraph> = (0..200).map(|_| random_digraph(&mut rng)).collect();
    let results = par::map(&graphs, |g| -> Result<(u128, u128)> {
        Ok((
            automorphism_group(g, None)?.order(),
            brute_force_automorphisms(g)?.order(),
        ))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let agree = results.iter().filter(|(a, b)| a == b).count();
    let nontrivial = results.iter().filter(|(a, _)| *a > 1).count();
    Ok((
        agree == graphs.len(),
        format!(
            "{agree}/{} agree ({nontrivial} with nontrivial group)",
            graphs.len()
        ),
    ))
}

/// Groups of order at most 8 for the structural property checks.
pub fn small_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=8).map(z).collect();
    out.push(FiniteGroup::direct_product(&z(2), &z(2)));
    out.push(FiniteGroup::direct_product(&z(2), &z(4)));
    out.push(FiniteGroup::direct_product(
        &FiniteGroup::direct_product(&z(2), &z(2)),
        &z(2),
    ));
    out.push(catalog::symmetric3());
    out.push(catalog::dihedral(4).expect("n >= 3"));
    out.push(catalog::quaternion());
    out
}

/// A random connection matrix: either independent random cells or `k`
/// rounds of one element per row placed along a random permutation of the
/// blocks, which is usually regular.
pub fn random_connection(rng: &mut ChaCha8Rng, group: &FiniteGroup, m: usize) -> ConnectionMatrix {
    let n = group.order();
    let mut t = ConnectionMatrix::empty(m);
    if rng.gen_bool(0.5) {
        let p = rng.gen_range(0.05..0.4);
        for i in 0..m {
            for j in 0..m {
                t.set(i, j, (0..n).filter(|_| rng.gen_bool(p)));
            }
        }
    } else {
        let k = rng.gen_range(1..=3);
        let mut perm: Vec<usize> = (0..m).collect();
        for _ in 0..k {
            perm.shuffle(rng);
            for (i, &j) in perm.iter().enumerate() {
                t.extend(i, j, [rng.gen_range(0..n)]);
            }
        }
    }
    t
}

fn structural_properties(options: &SuiteOptions) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x8);
    let groups = small_groups();
    let cases: Vec<(FiniteGroup, ConnectionMatrix)> = (0..500)
        .map(|_| {
            let g = groups.choose(&mut rng).expect("nonempty").clone();
            let m = rng.gen_range(1..=4);
            let t = random_connection(&mut rng, &g, m);
            (g, t)
        })
        .collect();
    let results = par::map(&cases, |(g, t)| structural_case(g, t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<String> = results.iter().flatten().cloned().collect();
    let oriented = cases
        .iter()
        .filter(|(g, t)| connection_is_oriented(g, t))
        .count();
    let regular = cases
        .iter()
        .filter(|(_, t)| (0..=4).any(|k| profile_is_k_regular(t, k)))
        .count();
    let detail = if failures.is_empty() {
        format!("500/500 pass ({oriented} oriented, {regular} regular)")
    } else {
        format!("{} failures: {}", failures.len(), failures.join("; "))
    };
    Ok((failures.is_empty(), detail))
}

/// The first failed property, if any.
fn structural_case(g: &FiniteGroup, t: &ConnectionMatrix) -> Result<Option<String>> {
    let gamma = MCayleyDigraph::build(g, t)?;
    let graph = gamma.graph();
    if connection_is_oriented(g, t) != graph.is_oriented() {
        return Ok(Some("orientation mismatch".into()));
    }
    for k in 0..=4 {
        if profile_is_k_regular(t, k) != graph.is_k_regular(k) {
            return Ok(Some(format!("{k}-regularity mismatch")));
        }
    }
    let aut = automorphism_group(graph, None)?;
    for x in g.elements() {
        let r: Permutation = gamma.right_translation(x)?;
        if !r.is_automorphism_of(graph) || !aut.contains(&r)? {
            return Ok(Some(format!("R({x}) is not an automorphism")));
        }
    }
    let rg = gamma.regular_action_group();
    if rg.orbits() != gamma.blocks() {
        return Ok(Some("R(G) orbits differ from the blocks".into()));
    }
    if !rg.is_semiregular() || rg.order() != g.order() as u128 {
        return Ok(Some("R(G) is not semiregular of order |G|".into()));
    }
    Ok(None)
}

fn block_criterion(_: &SuiteOptions) -> Result<(bool, String)> {
    let grid: Vec<FamilyInstance> = [z2_grid(), cyclic_grid(), klein_grid(), two_generated_grid()]
        .into_iter()
        .flatten()
        .collect();
    let results = par::map(&grid, |inst| -> Result<(bool, bool)> {
        let t = inst.family.emit(&inst.group, &inst.spec, inst.m)?;
        let gamma = MCayleyDigraph::build(&inst.group, &t)?;
        let aut = automorphism_group(gamma.graph(), None)?;
        let reps: Vec<usize> = (0..inst.m).map(|i| gamma.vertex(0, i)).collect();
        let check = check_block_stabilizer_criterion(&gamma, &aut, &reps)?;
        Ok((check.holds(), check.conclusion_holds()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let both = results.iter().filter(|(h, c)| *h && *c).count();

    let (g, t) = worked_example_z4();
    let gamma = MCayleyDigraph::build(&g, &t)?;
    let aut = automorphism_group(gamma.graph(), None)?;
    let example =
        check_block_stabilizer_criterion(&gamma, &aut, &[gamma.vertex(0, 0), gamma.vertex(0, 1)])?;
    let ok = both == grid.len() && !example.holds();
    Ok((
        ok,
        format!(
            "{both}/{} family instances satisfy hypotheses and |Aut| = |G|; worked example hypotheses hold = {}",
            grid.len(),
            example.holds()
        ),
    ))
}

/// Whether `correction` is the only single-entry fix of `printed`.
fn unique_fix(
    group: &FiniteGroup,
    printed: &LiteralTable,
    correction: &[Relocation],
) -> (bool, bool, Vec<Relocation>) {
    let broken = !validate_table(group, &printed.to_matrix()).is_empty();
    let fixes = single_entry_fixes(group, printed);
    (broken, fixes == correction, fixes)
}

fn corrections_forced(_: &SuiteOptions) -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut ok = true;

    let z2 = z(2);
    let printed6 = z2_tables::printed(6).expect("table exists");
    let (broken, unique, fixes) = unique_fix(&z2, &printed6, &z2_tables::corrections(6));
    ok &= broken && unique;
    let describe = |r: &Relocation| {
        let e = &printed6.entries[r.entry];
        format!("{:?}{:?}->{:?}", e.cell, e.set, r.to)
    };
    notes.push(format!(
        "Z2 m=6: printed broken = {broken}, single-entry fixes = [{}]",
        fixes.iter().map(describe).collect::<Vec<_>>().join(", ")
    ));

    let mut cyclic_total = 0;
    let mut cyclic_ok = 0;
    for n in 3..=10 {
        let g = z(n);
        for m in 3..=8 {
            let printed = constructions::cyclic_general_printed(&g, &g.generators(), m)?;
            let (broken, unique, _) = unique_fix(
                &g,
                &printed,
                &[constructions::cyclic_general_correction(&printed)],
            );
            cyclic_total += 1;
            cyclic_ok += usize::from(broken && unique);
        }
    }
    ok &= cyclic_ok == cyclic_total;
    notes.push(format!(
        "cyclic m>=3: {cyclic_ok}/{cyclic_total} broken with unique fix"
    ));

    let mut two_total = 0;
    let mut two_ok = 0;
    for (_, g) in two_generated_groups() {
        let spec = g.generators().with_long_x(&g);
        for m in 2..=6 {
            let printed = constructions::two_generated_printed(&g, &spec, m)?;
            let (broken, unique, _) = unique_fix(
                &g,
                &printed,
                &[constructions::two_generated_correction(&printed)],
            );
            two_total += 1;
            two_ok += usize::from(broken && unique);
        }
    }
    ok &= two_ok == two_total;
    notes.push(format!(
        "two-generator: {two_ok}/{two_total} broken with unique fix"
    ));
    Ok((ok, notes.join("; ")))
}

fn rigid_exploration(options: &SuiteOptions) -> Result<(bool, String)> {
    let mut runs: Vec<ExploreOptions> = vec![
        ExploreOptions {
            n: 4,
            k: 3,
            oriented: false,
            mode: ExploreMode::Exhaustive,
            budget: 10_000_000,
        },
        ExploreOptions {
            n: 5,
            k: 1,
            oriented: false,
            mode: ExploreMode::Exhaustive,
            budget: 10_000_000,
        },
        ExploreOptions {
            n: 7,
            k: 3,
            oriented: true,
            mode: ExploreMode::Exhaustive,
            budget: 10_000_000,
        },
    ];
    runs.extend((7..=12).map(|n| ExploreOptions {
        n,
        k: 3,
        oriented: true,
        mode: ExploreMode::Randomized {
            seed: options.seed,
            steps: 5,
        },
        budget: 300,
    }));
    let outcomes = par::map(&runs, search_trivial_aut_digraph)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut ok = true;
    let mut witnesses = 0;
    for out in &outcomes {
        if let Some(w) = &out.witness {
            witnesses += 1;
            let graph = Digraph::from_json(w)?;
            let check = RigidityCheck::of(&graph)?;
            let shape_ok =
                graph.is_k_regular(out.options.k) && (!out.options.oriented || graph.is_oriented());
            ok &= check.is_rigid() && shape_ok && out.exploratory;
        }
    }
    let summary: Vec<String> = outcomes
        .iter()
        .map(|o| format!("n={} k={} {:?}", o.options.n, o.options.k, o.status))
        .collect();
    Ok((
        ok,
        format!(
            "exploratory; {witnesses} witnesses all verified = {ok}; {}",
            summary.join(", ")
        ),
    ))
}
