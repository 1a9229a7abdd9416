//! Brute-force verifiers. Every construction in the crate is re-checked here
//! against first-principles oracles: exhaustive enumeration of relations and
//! maps, an independent walk search deciding cover existence, and randomized
//! sweeps over generated instances. The verifiers never call the formula a
//! construction used to produce its output; they re-derive the claimed
//! property from the definitions.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgam::{
    block_decomposition, build_amalg_graph, cap_witness, find_interior_path, jpp_witness,
    signed_antidiagonal_cover, worked_example, Side, TieBreak,
};
use crate::board::{
    product_coloring, steinhaus_check, Board, BoardError, OrientedQuadruple,
};
use crate::family::{cover_by_antidiagonal, is_in_family_f, CoverError};
use crate::graph::LinearGraph;
use crate::morphism::{compose, enumerate_epimorphisms, is_epimorphism, StructureMap};
use crate::structure::{RelStructure, Relation};
use crate::tower::{check_tower, extend_tower, new_tower};

/// The outcome of one verification sweep: how many instances were checked,
/// which ones failed (with a description each), and how long it took. The
/// sweep passes exactly when the failure list is empty.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub property: String,
    pub instances: usize,
    pub failures: Vec<String>,
    pub elapsed_secs: f64,
}

impl VerificationReport {
    pub fn from_run(
        property: &str,
        instances: usize,
        failures: Vec<String>,
        started: Instant,
    ) -> Self {
        VerificationReport {
            property: property.to_string(),
            instances,
            failures,
            elapsed_secs: started.elapsed().as_secs_f64(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} instances, {} failures, {:.2}s -- {}",
            self.property,
            self.instances,
            self.failures.len(),
            self.elapsed_secs,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// Every binary relation on the graph, in a fixed order. The space is
/// 2^(n^2), so the base size is capped at 4.
pub fn all_relations(g: LinearGraph) -> Vec<Relation> {
    let vs: Vec<i32> = g.vertices().collect();
    let pairs: Vec<(i32, i32)> = vs
        .iter()
        .flat_map(|&a| vs.iter().map(move |&b| (a, b)))
        .collect();
    assert!(
        pairs.len() <= 16,
        "relation enumeration is exponential in the squared size; {} is too large",
        g
    );
    (0u32..(1u32 << pairs.len()))
        .map(|mask| {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            Relation::new(g, chosen).expect("pairs lie in the base graph")
        })
        .collect()
}

/// Every family member on the graph: relations that are surjective and
/// connected, packaged as structures.
pub fn family_members(g: LinearGraph) -> Vec<RelStructure> {
    all_relations(g)
        .into_iter()
        .map(RelStructure::with_relation)
        .filter(|a| is_in_family_f(a).expect("structure carries a relation"))
        .collect()
}

fn closed_neighbors(g: LinearGraph, v: i32) -> Vec<i32> {
    g.vertices().filter(|&w| g.adjacent(v, w)).collect()
}

/// Decides whether any plain antidiagonal structure of size up to
/// `2 * max_half` maps onto the input by an epimorphism, without using the
/// constructive cover. A map from `[2j]` with the antidiagonal relation is
/// the same thing as a double walk `(u_t, v_t)` over positions `t` and
/// `2j+1-t`: each step moves both heads to closed neighbors, every visited
/// head pair must lie in the relation in both orders, and the map is an
/// epimorphism exactly when all relation pairs and all vertices have been
/// visited and the two heads end adjacent or equal (the middle junction).
/// Relation-edge coverage is automatic: the doubled listing is one
/// contiguous walk on a linear graph, and a surjective walk on a linear
/// graph crosses every edge.
pub fn antidiagonal_cover_exists(
    a: &RelStructure,
    max_half: usize,
) -> Result<bool, CoverError> {
    let s = a.s.as_ref().ok_or(CoverError::NoRelation)?;
    let g = a.graph;
    let pairs: Vec<(i32, i32)> = s.pairs().iter().copied().collect();
    if pairs.is_empty() {
        return Ok(false);
    }
    assert!(pairs.len() <= 25, "pair mask would overflow");
    assert!(g.len() <= 6, "vertex mask would overflow");
    let full_pairs: u64 = (1u64 << pairs.len()) - 1;
    let full_verts: u64 = (1u64 << g.len()) - 1;
    let vs: Vec<i32> = g.vertices().collect();
    let vert_bit = |v: i32| -> u64 { 1u64 << g.index_of(v).expect("vertex of the graph") };
    let pair_bits = |u: i32, v: i32| -> Option<u64> {
        let forward = pairs.iter().position(|&p| p == (u, v))?;
        let backward = pairs.iter().position(|&p| p == (v, u))?;
        Some((1u64 << forward) | (1u64 << backward))
    };

    // One search state per (head, head, visited pairs, visited vertices).
    type State = (i32, i32, u64, u64);
    let mut frontier: Vec<State> = Vec::new();
    let mut seen: BTreeSet<State> = BTreeSet::new();
    for &u in &vs {
        for &v in &vs {
            if let Some(bits) = pair_bits(u, v) {
                let st = (u, v, bits, vert_bit(u) | vert_bit(v));
                if seen.insert(st) {
                    frontier.push(st);
                }
            }
        }
    }
    for depth in 1..=max_half {
        for &(u, v, covered, image) in &frontier {
            if covered == full_pairs && image == full_verts && g.adjacent(u, v) {
                return Ok(true);
            }
        }
        if depth == max_half {
            break;
        }
        let mut next: Vec<State> = Vec::new();
        for &(u, v, covered, image) in &frontier {
            for u2 in closed_neighbors(g, u) {
                for v2 in closed_neighbors(g, v) {
                    if let Some(bits) = pair_bits(u2, v2) {
                        let st = (u2, v2, covered | bits, image | vert_bit(u2) | vert_bit(v2));
                        if seen.insert(st) {
                            next.push(st);
                        }
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(false)
}

/// A random epimorphism of bare plain linear graphs: a closed-neighbor walk
/// on the codomain, rejection-sampled until it is surjective.
pub fn random_plain_epi(rng: &mut impl Rng, domain: i64, codomain: i64) -> StructureMap {
    assert!(
        domain >= codomain && codomain >= 1,
        "a walk of length {domain} cannot cover {codomain} vertices"
    );
    let d = LinearGraph::plain(domain).expect("size is positive");
    let c = LinearGraph::plain(codomain).expect("size is positive");
    for _ in 0..1_000_000 {
        let mut at = c
            .vertex_at(rng.random_range(0..c.len()))
            .expect("index in range");
        let mut images = vec![at];
        for _ in 1..d.len() {
            let nbrs = closed_neighbors(c, at);
            at = nbrs[rng.random_range(0..nbrs.len())];
            images.push(at);
        }
        let image: BTreeSet<i32> = images.iter().copied().collect();
        if image.len() == c.len() {
            return StructureMap::new(d, c, images).expect("walk stays in the codomain");
        }
    }
    unreachable!("rejection sampling failed to produce a surjective walk");
}

/// A random antisymmetric epimorphism between signed antidiagonal
/// structures: a closed-neighbor walk on the positive positions, started at
/// an endpoint of the central edge and steered so that an extreme stays
/// reachable in the remaining steps — the final step is then forced onto an
/// extreme, and the doubled walk spans both extremes, which already forces
/// surjectivity. Steering (rather than rejection) keeps tight instances
/// with `domain_half` close to `codomain_half` cheap; blind walks reach an
/// extreme only with probability around 3^-codomain_half.
pub fn random_antisymmetric_epi(
    rng: &mut impl Rng,
    domain_half: i64,
    codomain_half: i64,
) -> StructureMap {
    assert!(
        domain_half >= codomain_half && codomain_half >= 1,
        "a walk of length {domain_half} cannot reach the extreme of signed [{codomain_half}]"
    );
    let c = LinearGraph::signed(codomain_half).expect("size is positive");
    let d = LinearGraph::signed(domain_half).expect("size is positive");
    // Steps from v to the nearest of the two extremes along the signed path.
    let nearest_extreme = |v: i32| -> i64 {
        let index = if v < 0 {
            i64::from(v) + codomain_half
        } else {
            i64::from(v) + codomain_half - 1
        };
        index.min(2 * codomain_half - 1 - index)
    };
    let mut at: i32 = if rng.random_range(0..2) == 0 { 1 } else { -1 };
    let mut walk = vec![at];
    for placed in 1..domain_half as usize {
        let remaining = domain_half - 1 - placed as i64;
        let feasible: Vec<i32> = closed_neighbors(c, at)
            .into_iter()
            .filter(|&v| nearest_extreme(v) <= remaining)
            .collect();
        at = feasible[rng.random_range(0..feasible.len())];
        walk.push(at);
    }
    debug_assert_eq!(i64::from(at.unsigned_abs()), codomain_half);
    let map = crate::amalgam::antisymmetric_from_positive(d, c, &walk)
        .expect("antisymmetric extension of a positive walk");
    debug_assert_eq!(
        is_epimorphism(
            &map,
            &RelStructure::antidiagonal_on(d),
            &RelStructure::antidiagonal_on(c)
        ),
        Ok(true)
    );
    map
}

/// A random symmetric family member on the graph: symmetric pair classes
/// are tossed in independently, rejection-sampled until the relation is
/// surjective and connected.
pub fn random_symmetric_member(rng: &mut impl Rng, g: LinearGraph) -> RelStructure {
    for _ in 0..1_000_000 {
        let mut pairs = BTreeSet::new();
        for a in g.vertices() {
            for b in g.vertices() {
                if a <= b && rng.random_range(0..2) == 1 {
                    pairs.insert((a, b));
                    pairs.insert((b, a));
                }
            }
        }
        let rel = Relation::new(g, pairs).expect("pairs lie in the graph");
        let a = RelStructure::with_relation(rel);
        if is_in_family_f(&a).expect("relation present") {
            return a;
        }
    }
    unreachable!("rejection sampling failed to produce a member");
}

/// Compares the membership classification against the independent
/// cover-existence search for every relation on graphs up to `max_size`.
/// The search bound is `4 * |s|` walk steps per relation.
pub fn verify_family_membership(max_size: i64) -> VerificationReport {
    let started = Instant::now();
    assert!(
        (1..=4).contains(&max_size),
        "the relation space is 2^(n^2); sizes above 4 are not supported"
    );
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 1..=max_size {
        let g = LinearGraph::plain(n).expect("size is positive");
        for rel in all_relations(g) {
            instances += 1;
            let bound = 4 * rel.len();
            let a = RelStructure::with_relation(rel);
            let classified = is_in_family_f(&a).expect("relation present");
            let coverable =
                antidiagonal_cover_exists(&a, bound).expect("relation present");
            if classified != coverable {
                failures.push(format!(
                    "on {}: classified in family = {}, cover exists = {}, for s = {}",
                    g,
                    classified,
                    coverable,
                    a.s.as_ref().expect("relation present")
                ));
            }
        }
    }
    VerificationReport::from_run("membership", instances, failures, started)
}

/// Runs the constructive antidiagonal cover on every family member up to
/// `max_size` and re-checks each output with the epimorphism oracle.
pub fn verify_covers(max_size: i64) -> VerificationReport {
    let started = Instant::now();
    assert!((1..=4).contains(&max_size), "member sweep caps at size 4");
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 1..=max_size {
        let g = LinearGraph::plain(n).expect("size is positive");
        for member in family_members(g) {
            instances += 1;
            if let Err(msg) = check_cover(&member) {
                failures.push(format!("on {}: {}", g, msg));
            }
        }
    }
    VerificationReport::from_run("covers", instances, failures, started)
}

fn check_cover(member: &RelStructure) -> Result<(), String> {
    let s = member.s.as_ref().expect("members carry a relation");
    let c = cover_by_antidiagonal(member)
        .map_err(|e| format!("cover failed for s = {}: {}", s, e))?;
    let size = c.cover.graph.len();
    if size != 4 * c.walk.len() || c.walk.len() > 2 * s.len() - 1 {
        return Err(format!(
            "cover of s = {} has size {} from a walk of {} pairs over {} relation pairs",
            s,
            size,
            c.walk.len(),
            s.len()
        ));
    }
    match is_epimorphism(&c.map, &c.cover, member) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("cover map of s = {} is not an epimorphism", s)),
        Err(e) => Err(format!("cover map of s = {} is malformed: {}", s, e)),
    }
}

/// Checks that every family member up to `max_size` is covered by an even
/// antidiagonal structure relabeled onto a signed graph.
pub fn verify_coinitiality(max_size: i64) -> VerificationReport {
    let started = Instant::now();
    assert!((1..=4).contains(&max_size), "member sweep caps at size 4");
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 1..=max_size {
        let g = LinearGraph::plain(n).expect("size is positive");
        for member in family_members(g) {
            instances += 1;
            let s = member.s.as_ref().expect("members carry a relation");
            match signed_antidiagonal_cover(&member) {
                Ok((cover, map)) => {
                    let even = cover.graph.is_signed()
                        && cover.s.as_ref().is_some_and(|r| r.is_antidiagonal());
                    if !even {
                        failures.push(format!(
                            "on {}: cover of s = {} is not a signed antidiagonal structure",
                            g, s
                        ));
                    } else if is_epimorphism(&map, &cover, &member) != Ok(true) {
                        failures.push(format!(
                            "on {}: signed cover map of s = {} fails the epimorphism oracle",
                            g, s
                        ));
                    }
                }
                Err(e) => failures.push(format!("on {}: s = {}: {}", g, s, e)),
            }
        }
    }
    VerificationReport::from_run("coinitiality", instances, failures, started)
}

fn check_jpp_pair(a: &RelStructure, b: &RelStructure) -> Result<(), String> {
    let w = jpp_witness(a, b).map_err(|e| format!("witness construction failed: {e}"))?;
    if !w
        .domain
        .s
        .as_ref()
        .is_some_and(|r| r.is_antidiagonal())
    {
        return Err("witness domain relation is not an antidiagonal".to_string());
    }
    for (m, target, which) in [(&w.to_first, a, "first"), (&w.to_second, b, "second")] {
        match is_epimorphism(m, &w.domain, target) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{which} map fails the epimorphism oracle")),
            Err(e) => return Err(format!("{which} map is malformed: {e}")),
        }
    }
    Ok(())
}

fn describe_structure(a: &RelStructure) -> String {
    match &a.s {
        Some(s) => format!("{} with s = {}", a.graph, s),
        None => format!("{} without a relation", a.graph),
    }
}

/// Joint covers: every pair of plain antidiagonal structures up to size 10
/// exhaustively, every pair of family members up to size 3 exhaustively,
/// and `samples` random pairs involving size-4 members when `max_size` is 4.
pub fn verify_jpp(max_size: i64, samples: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    assert!((1..=4).contains(&max_size), "member sweep caps at size 4");
    let mut instances = 0;
    let mut failures = Vec::new();
    for k in 1..=10 {
        for n in 1..=10 {
            instances += 1;
            let a = RelStructure::antidiagonal_on(LinearGraph::plain(k).expect("positive"));
            let b = RelStructure::antidiagonal_on(LinearGraph::plain(n).expect("positive"));
            if let Err(msg) = check_jpp_pair(&a, &b) {
                failures.push(format!("antidiagonal pair [{k}] x [{n}]: {msg}"));
            }
        }
    }
    let mut small: Vec<RelStructure> = Vec::new();
    for n in 1..=max_size.min(3) {
        small.extend(family_members(LinearGraph::plain(n).expect("positive")));
    }
    for a in &small {
        for b in &small {
            instances += 1;
            if let Err(msg) = check_jpp_pair(a, b) {
                failures.push(format!(
                    "pair {} / {}: {}",
                    describe_structure(a),
                    describe_structure(b),
                    msg
                ));
            }
        }
    }
    if max_size >= 4 && samples > 0 {
        let four = family_members(LinearGraph::plain(4).expect("positive"));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = &four[rng.random_range(0..four.len())];
            let b = if rng.random_range(0..2) == 0 {
                &four[rng.random_range(0..four.len())]
            } else {
                &small[rng.random_range(0..small.len())]
            };
            instances += 1;
            if let Err(msg) = check_jpp_pair(a, b) {
                failures.push(format!(
                    "sampled pair {} / {}: {}",
                    describe_structure(a),
                    describe_structure(b),
                    msg
                ));
            }
        }
    }
    VerificationReport::from_run("jpp", instances, failures, started)
}

fn check_ap_pair(f: &StructureMap, g: &StructureMap) -> Result<(), String> {
    let am = crate::board::solecki_amalgamate(f, g)
        .map_err(|e| format!("amalgamation failed: {e}"))?;
    let domain = RelStructure::r_only(am.domain);
    for (m, target, which) in [
        (&am.to_first, f.domain(), "first"),
        (&am.to_second, g.domain(), "second"),
    ] {
        match is_epimorphism(m, &domain, &RelStructure::r_only(target)) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{which} map fails the epimorphism oracle")),
            Err(e) => return Err(format!("{which} map is malformed: {e}")),
        }
    }
    let via_first = compose(f, &am.to_first).map_err(|e| e.to_string())?;
    let via_second = compose(g, &am.to_second).map_err(|e| e.to_string())?;
    if !via_first.same_map(&via_second) {
        return Err("the amalgamation square does not commute".to_string());
    }
    Ok(())
}

/// Amalgamation of bare linear graphs: all epimorphism pairs with sizes up
/// to `min(max_size, 4)` exhaustively, plus `samples` random pairs with
/// domain sizes up to 6.
pub fn verify_ap_linear(max_size: i64, samples: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let cap = max_size.min(4);
    assert!(cap >= 1, "need at least one size");
    let mut instances = 0;
    let mut failures = Vec::new();
    for k in 1..=cap {
        let target = RelStructure::r_only(LinearGraph::plain(k).expect("positive"));
        for l in k..=cap {
            let first_source = RelStructure::r_only(LinearGraph::plain(l).expect("positive"));
            let firsts = enumerate_epimorphisms(&first_source, &target)
                .expect("bare structures enumerate");
            for m in k..=cap {
                let second_source =
                    RelStructure::r_only(LinearGraph::plain(m).expect("positive"));
                let seconds = enumerate_epimorphisms(&second_source, &target)
                    .expect("bare structures enumerate");
                for f in &firsts {
                    for g in &seconds {
                        instances += 1;
                        if let Err(msg) = check_ap_pair(f, g) {
                            failures.push(format!(
                                "f = {:?} [{l}]->[{k}], g = {:?} [{m}]->[{k}]: {msg}",
                                f.images(),
                                g.images()
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let l = rng.random_range(1..=6);
        let m = rng.random_range(1..=6);
        let k = rng.random_range(1..=l.min(m));
        let f = random_plain_epi(&mut rng, l, k);
        let g = random_plain_epi(&mut rng, m, k);
        instances += 1;
        if let Err(msg) = check_ap_pair(&f, &g) {
            failures.push(format!(
                "random f = {:?} [{l}]->[{k}], g = {:?} [{m}]->[{k}]: {msg}",
                f.images(),
                g.images()
            ));
        }
    }
    VerificationReport::from_run("ap", instances, failures, started)
}

fn check_cap_pair(phi1: &StructureMap, phi2: &StructureMap) -> Result<(), String> {
    let w = cap_witness(phi1, phi2).map_err(|e| format!("witness construction failed: {e}"))?;
    if !w.domain.graph.is_signed()
        || !w
            .domain
            .s
            .as_ref()
            .is_some_and(|r| r.is_antidiagonal())
    {
        return Err("witness domain is not a signed antidiagonal structure".to_string());
    }
    for (m, target, which) in [
        (&w.to_first, phi1.domain(), "first"),
        (&w.to_second, phi2.domain(), "second"),
    ] {
        match is_epimorphism(m, &w.domain, &RelStructure::antidiagonal_on(target)) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{which} map fails the epimorphism oracle")),
            Err(e) => return Err(format!("{which} map is malformed: {e}")),
        }
    }
    let via_first = compose(phi1, &w.to_first).map_err(|e| e.to_string())?;
    let via_second = compose(phi2, &w.to_second).map_err(|e| e.to_string())?;
    if !via_first.same_map(&via_second) {
        return Err("the amalgamation square does not commute".to_string());
    }
    if w.to_first.apply(1).abs() != 1 {
        return Err(format!(
            "the first map sends 1 to {}, not to the central edge",
            w.to_first.apply(1)
        ));
    }
    Ok(())
}

fn describe_cap_pair(phi1: &StructureMap, phi2: &StructureMap) -> String {
    format!(
        "phi1 = {:?} on {}, phi2 = {:?} on {}",
        phi1.images(),
        phi1.domain(),
        phi2.images(),
        phi2.domain()
    )
}

/// Amalgamation of signed antidiagonal structures: the worked example,
/// identity pairs, and `instances` random antisymmetric pairs with half
/// sizes up to `max_size`.
pub fn verify_cap(instances: usize, max_size: i64, seed: u64) -> VerificationReport {
    let started = Instant::now();
    assert!(max_size >= 1, "need at least one size");
    let mut checked = 0;
    let mut failures = Vec::new();
    let (phi1, phi2) = worked_example();
    checked += 1;
    if let Err(msg) = check_cap_pair(&phi1, &phi2) {
        failures.push(format!("worked example: {msg}"));
    }
    for k in 1..=max_size.min(4) {
        let id = StructureMap::identity(LinearGraph::signed(k).expect("positive"));
        checked += 1;
        if let Err(msg) = check_cap_pair(&id, &id) {
            failures.push(format!("identity pair on signed [{k}]: {msg}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..instances {
        let k = rng.random_range(1..=max_size);
        let l = rng.random_range(k..=max_size);
        let m = rng.random_range(k..=max_size);
        let phi1 = random_antisymmetric_epi(&mut rng, l, k);
        let phi2 = random_antisymmetric_epi(&mut rng, m, k);
        checked += 1;
        if let Err(msg) = check_cap_pair(&phi1, &phi2) {
            failures.push(format!("{}: {}", describe_cap_pair(&phi1, &phi2), msg));
        }
    }
    VerificationReport::from_run("cap", checked, failures, started)
}

/// Weak amalgamation over each family member up to `max_size`: the member's
/// signed antidiagonal cover is the interposed structure, and `samples`
/// random cospans over it are amalgamated and checked to commute all the
/// way down to the member.
pub fn verify_wap(max_size: i64, samples: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    assert!((1..=4).contains(&max_size), "member sweep caps at size 4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 1..=max_size {
        let g = LinearGraph::plain(n).expect("positive");
        for member in family_members(g) {
            instances += 1;
            let s = member.s.as_ref().expect("members carry a relation");
            let (cover, phi) = match signed_antidiagonal_cover(&member) {
                Ok(pair) => pair,
                Err(e) => {
                    failures.push(format!("on {}: s = {}: no interposed cover: {}", g, s, e));
                    continue;
                }
            };
            let h = (cover.graph.len() / 2) as i64;
            for _ in 0..samples {
                let l = rng.random_range(h..=h + 2);
                let m = rng.random_range(h..=h + 2);
                let psi1 = random_antisymmetric_epi(&mut rng, l, h);
                let psi2 = random_antisymmetric_epi(&mut rng, m, h);
                instances += 1;
                if let Err(msg) = check_wap_cospan(&member, &phi, &psi1, &psi2) {
                    failures.push(format!(
                        "on {} with s = {}: cospan {}: {}",
                        g,
                        s,
                        describe_cap_pair(&psi1, &psi2),
                        msg
                    ));
                }
            }
        }
    }
    VerificationReport::from_run("wap", instances, failures, started)
}

fn check_wap_cospan(
    member: &RelStructure,
    phi: &StructureMap,
    psi1: &StructureMap,
    psi2: &StructureMap,
) -> Result<(), String> {
    check_cap_pair(psi1, psi2)?;
    let w = cap_witness(psi1, psi2).map_err(|e| e.to_string())?;
    let down1 = compose(psi1, &w.to_first).map_err(|e| e.to_string())?;
    let down2 = compose(psi2, &w.to_second).map_err(|e| e.to_string())?;
    let outer1 = compose(phi, &down1).map_err(|e| e.to_string())?;
    let outer2 = compose(phi, &down2).map_err(|e| e.to_string())?;
    if !outer1.same_map(&outer2) {
        return Err("the outer square over the member does not commute".to_string());
    }
    if is_epimorphism(&outer1, &w.domain, member) != Ok(true) {
        return Err("the composite down to the member is not an epimorphism".to_string());
    }
    Ok(())
}

/// Every oriented quadruple of boundary cells of the board, enumerated by a
/// starting cell and three strictly increasing clockwise offsets. Boards
/// with a side of length one have no simple boundary cycle and yield none.
pub fn all_oriented_quadruples(board: &Board) -> Result<Vec<OrientedQuadruple>, BoardError> {
    if board.width() < 2 || board.height() < 2 {
        return Ok(Vec::new());
    }
    let cycle = board.boundary_cycle();
    let len = cycle.len();
    let mut quads = Vec::new();
    for start in 0..len {
        for a in 0..len {
            for b in (a + 1)..len {
                for c in (b + 1)..len {
                    quads.push(OrientedQuadruple::new(
                        board,
                        cycle[start],
                        cycle[(start + a) % len],
                        cycle[(start + b) % len],
                        cycle[(start + c) % len],
                    )?);
                }
            }
        }
    }
    Ok(quads)
}

/// The path duality over every coloring of the `rows x cols` board and
/// every oriented quadruple of its boundary.
pub fn verify_steinhaus(rows: i64, cols: i64) -> VerificationReport {
    let started = Instant::now();
    assert!(
        rows >= 1 && cols >= 1 && rows * cols <= 12,
        "the coloring sweep is exponential in rows * cols; cap is 12 cells"
    );
    let x = LinearGraph::plain(cols).expect("positive");
    let y = LinearGraph::plain(rows).expect("positive");
    let empty = Board::new(x, y, []).expect("axes are valid");
    let quads = all_oriented_quadruples(&empty).expect("boundary cells are valid");
    let cells: Vec<(i32, i32)> = empty.cells().collect();
    let mut instances = 0;
    let mut failures = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let black = cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c);
        let board = Board::new(x, y, black).expect("cells lie on the board");
        for q in &quads {
            instances += 1;
            match steinhaus_check(&board, q) {
                Ok(outcome) if outcome.holds() => {}
                Ok(outcome) => failures.push(format!(
                    "coloring {:?} quadruple {:?}: black path {}, white path {}",
                    board.black_cells(),
                    (q.w, q.x, q.y, q.z),
                    outcome.black_eight.is_some(),
                    outcome.white_four.is_some()
                )),
                Err(e) => failures.push(format!(
                    "coloring {:?} quadruple {:?}: {}",
                    board.black_cells(),
                    (q.w, q.x, q.y, q.z),
                    e
                )),
            }
        }
    }
    VerificationReport::from_run("steinhaus", instances, failures, started)
}

/// The path duality over `colorings` random colorings of the `rows x cols`
/// board and every oriented quadruple of its boundary. Covers boards too
/// large for the exhaustive sweep.
pub fn sample_steinhaus(rows: i64, cols: i64, colorings: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    assert!(
        rows >= 1 && cols >= 1 && rows * cols <= 25,
        "each duality check walks the whole board; cap is 25 cells"
    );
    let x = LinearGraph::plain(cols).expect("positive");
    let y = LinearGraph::plain(rows).expect("positive");
    let empty = Board::new(x, y, []).expect("axes are valid");
    let quads = all_oriented_quadruples(&empty).expect("boundary cells are valid");
    let cells: Vec<(i32, i32)> = empty.cells().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0;
    let mut failures = Vec::new();
    for _ in 0..colorings {
        let black = cells.iter().filter(|_| rng.random::<bool>()).copied();
        let board = Board::new(x, y, black).expect("cells lie on the board");
        for q in &quads {
            instances += 1;
            match steinhaus_check(&board, q) {
                Ok(outcome) if outcome.holds() => {}
                Ok(outcome) => failures.push(format!(
                    "coloring {:?} quadruple {:?}: black path {}, white path {}",
                    board.black_cells(),
                    (q.w, q.x, q.y, q.z),
                    outcome.black_eight.is_some(),
                    outcome.white_four.is_some()
                )),
                Err(e) => failures.push(format!(
                    "coloring {:?} quadruple {:?}: {}",
                    board.black_cells(),
                    (q.w, q.x, q.y, q.z),
                    e
                )),
            }
        }
    }
    VerificationReport::from_run("steinhaus-sampled", instances, failures, started)
}

fn check_structural_pair(phi1: &StructureMap, phi2: &StructureMap) -> Result<(), String> {
    let first = block_decomposition(phi1).map_err(|e| format!("first blocks: {e}"))?;
    let second = block_decomposition(phi2).map_err(|e| format!("second blocks: {e}"))?;
    // Reconstruction: the sign pattern recorded by the blocks matches the map.
    for (blocks, map, which) in [(&first, phi1, "first"), (&second, phi2, "second")] {
        for i in blocks.blocks() {
            let (lo, hi) = blocks
                .block_interval(i)
                .ok_or_else(|| format!("{which} block {i} has no interval"))?;
            let sign = blocks
                .block_sign(i)
                .ok_or_else(|| format!("{which} block {i} has no sign"))?;
            for v in map.domain().vertices() {
                if v >= lo && v <= hi && map.apply(v).signum() != sign {
                    return Err(format!(
                        "{which} map has sign {} at {v}, but block {i} claims {sign}",
                        map.apply(v).signum()
                    ));
                }
            }
        }
    }
    let g1 = build_amalg_graph(&first, &second, TieBreak::Vertical)
        .map_err(|e| format!("vertical-tie graph: {e}"))?;
    let g2 = build_amalg_graph(&first, &second, TieBreak::Horizontal)
        .map_err(|e| format!("horizontal-tie graph: {e}"))?;
    build_amalg_graph(&first, &second, TieBreak::Both)
        .map_err(|e| format!("both-ties graph: {e}"))?;
    for (g, name) in [(&g1, "vertical-tie"), (&g2, "horizontal-tie")] {
        let (p, q) = (g.x_radius(), g.y_radius());
        for (i, j) in g.vertices() {
            if i.abs() < p && j.abs() < q && g.degree((i, j)) != 2 {
                return Err(format!(
                    "{name} graph: interior vertex ({i},{j}) has degree {}",
                    g.degree((i, j))
                ));
            }
        }
        for &(a, b) in g.edges() {
            let mirrored = ((-a.0, -a.1), (-b.0, -b.1));
            let norm = if mirrored.0 <= mirrored.1 {
                mirrored
            } else {
                (mirrored.1, mirrored.0)
            };
            if !g.edges().contains(&norm) {
                return Err(format!(
                    "{name} graph: edge {a:?}-{b:?} has no centrally symmetric partner"
                ));
            }
        }
    }
    // The four degree-two walks exist, end on the border, and avoid the
    // origin after leaving it.
    for (g, side, name) in [
        (&g1, Side::Bottom, "vertical-tie bottom"),
        (&g1, Side::Top, "vertical-tie top"),
        (&g2, Side::Left, "horizontal-tie left"),
        (&g2, Side::Right, "horizontal-tie right"),
    ] {
        let walk = find_interior_path(g, side).map_err(|e| format!("{name} walk: {e}"))?;
        let last = *walk.last().expect("walks are nonempty");
        if !g.is_border(last) {
            return Err(format!("{name} walk ends at {last:?}, not on the border"));
        }
        if walk.iter().skip(1).any(|&v| v == (0, 0)) {
            return Err(format!("{name} walk returns to the origin"));
        }
    }
    // Corner dichotomy of the product coloring.
    let board = product_coloring(phi1, phi2).map_err(|e| e.to_string())?;
    let (pp, mm) = (board.is_black((1, 1)), board.is_black((-1, -1)));
    let (pm, mp) = (board.is_black((1, -1)), board.is_black((-1, 1)));
    if pp != mm || pm != mp || pp == pm {
        return Err(format!(
            "corner dichotomy fails: (1,1)={pp} (-1,-1)={mm} (1,-1)={pm} (-1,1)={mp}"
        ));
    }
    // No crossing out of a full-range column: when a block of the first map
    // already covers the whole positive target range, the vertical-tie graph
    // has no horizontal edge leaving that column.
    let k = phi1.codomain().max_vertex();
    for i0 in first.blocks() {
        if first.image_interval(i0) != Some((1, k)) {
            continue;
        }
        for &(a, b) in g1.edges() {
            let crossing = (a.0 == i0 && b.0 == i0 + 1 && a.1 == b.1)
                || (b.0 == i0 && a.0 == i0 + 1 && a.1 == b.1);
            if crossing {
                return Err(format!(
                    "vertical-tie graph: edge {a:?}-{b:?} crosses out of full-range column {i0}"
                ));
            }
        }
    }
    Ok(())
}

/// Structural claims about block decompositions, grid graphs, and product
/// colorings, over the worked example and `samples` random antisymmetric
/// pairs with half sizes up to `max_size`.
pub fn verify_structural(max_size: i64, samples: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    assert!(max_size >= 1, "need at least one size");
    let mut instances = 0;
    let mut failures = Vec::new();
    let (phi1, phi2) = worked_example();
    instances += 1;
    if let Err(msg) = check_structural_pair(&phi1, &phi2) {
        failures.push(format!("worked example: {msg}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let k = rng.random_range(1..=max_size);
        let l = rng.random_range(k..=max_size);
        let m = rng.random_range(k..=max_size);
        let phi1 = random_antisymmetric_epi(&mut rng, l, k);
        let phi2 = random_antisymmetric_epi(&mut rng, m, k);
        instances += 1;
        if let Err(msg) = check_structural_pair(&phi1, &phi2) {
            failures.push(format!("{}: {}", describe_cap_pair(&phi1, &phi2), msg));
        }
    }
    VerificationReport::from_run("structural", instances, failures, started)
}

fn sample_tower_target(rng: &mut impl Rng, top_len: usize) -> RelStructure {
    let plain = |n: i64| LinearGraph::plain(n).expect("positive");
    let target = match rng.random_range(0..6) {
        0 | 3 => RelStructure::antidiagonal_on(plain(1)),
        1 => RelStructure::antidiagonal_on(plain(2)),
        2 => RelStructure::antidiagonal_on(plain(3)),
        4 => random_symmetric_member(rng, plain(2)),
        _ => random_symmetric_member(rng, plain(3)),
    };
    let stage_len = match target.s.as_ref() {
        Some(s) if s.is_antidiagonal() => target.graph.len(),
        _ => match cover_by_antidiagonal(&target) {
            Ok(c) => c.cover.graph.len(),
            Err(_) => return RelStructure::antidiagonal_on(plain(1)),
        },
    };
    if top_len.saturating_mul(stage_len) > 2_000_000 {
        // Extending by the one-point antidiagonal keeps the top level size.
        RelStructure::antidiagonal_on(plain(1))
    } else {
        target
    }
}

/// Grows a fresh tower by `extensions` sampled family members and runs the
/// full consistency check on the result.
pub fn verify_tower(extensions: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0;
    let mut failures = Vec::new();
    let mut tower = new_tower();
    for step in 0..extensions {
        let target = sample_tower_target(&mut rng, tower.top().graph.len());
        instances += 1;
        match extend_tower(&tower, &target) {
            Ok(next) => tower = next,
            Err(e) => failures.push(format!(
                "extension {} by {} failed: {}",
                step,
                describe_structure(&target),
                e
            )),
        }
    }
    let report = check_tower(&tower);
    instances += report.instances;
    failures.extend(report.failures);
    VerificationReport::from_run("tower", instances, failures, started)
}
