//! Finite towers: inverse sequences of signed antidiagonal structures with
//! antisymmetric bonding epimorphisms and their canonical flip
//! automorphisms, plus the extension step that grows a tower so that its new
//! top level also covers a requested structure.

use std::time::Instant;

use thiserror::Error;

use crate::amalgam::{double_antidiagonal, jpp_witness, AmalgamError};
use crate::family::{is_in_family_f, CoverError};
use crate::graph::LinearGraph;
use crate::morphism::{
    compose, flip, is_epimorphism, order_isomorphism, MorphError, StructureMap,
};
use crate::structure::RelStructure;
use crate::textfmt::{graph_line, map_lines, relation_lines, strip_comment, Parser, TextError};
use crate::verify::VerificationReport;

#[derive(Debug, Error)]
pub enum TowerError {
    #[error("extension target is not in the family")]
    TargetNotInFamily,
    #[error("level {0} is out of range (tower has {1} levels)")]
    LevelOutOfRange(usize, usize),
    #[error("bonds compose downward: level {0} does not map onto level {1}")]
    BadDirection(usize, usize),
    #[error("tower invariant failed at level {level}: {reason}")]
    Invalid { level: usize, reason: String },
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Morph(#[from] MorphError),
}

/// A structure some tower level was extended to cover, with the covering
/// map from that level.
#[derive(Debug, Clone)]
pub struct RecordedTarget {
    pub level: usize,
    pub target: RelStructure,
    pub cover: StructureMap,
}

/// An inverse sequence of signed antidiagonal structures. `bonds[i]` maps
/// level `i + 1` onto level `i`; `flips[i]` is level `i`'s vertex negation.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Vec<RelStructure>,
    bonds: Vec<StructureMap>,
    flips: Vec<StructureMap>,
    records: Vec<RecordedTarget>,
}

impl Default for Tower {
    fn default() -> Self {
        new_tower()
    }
}

/// The one-level tower on the smallest signed graph.
pub fn new_tower() -> Tower {
    let base = LinearGraph::signed(1).expect("1 is positive");
    Tower {
        levels: vec![RelStructure::antidiagonal_on(base)],
        bonds: Vec::new(),
        flips: vec![flip(base).map],
        records: Vec::new(),
    }
}

impl Tower {
    pub fn levels(&self) -> &[RelStructure] {
        &self.levels
    }

    pub fn bonds(&self) -> &[StructureMap] {
        &self.bonds
    }

    pub fn flips(&self) -> &[StructureMap] {
        &self.flips
    }

    pub fn records(&self) -> &[RecordedTarget] {
        &self.records
    }

    pub fn top(&self) -> &RelStructure {
        self.levels.last().expect("towers are never empty")
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// The composite bond from a higher level down to a lower one; the
    /// identity when the levels coincide.
    pub fn bond_through(&self, from: usize, to: usize) -> Result<StructureMap, TowerError> {
        let h = self.height();
        if from >= h {
            return Err(TowerError::LevelOutOfRange(from, h));
        }
        if to > from {
            return Err(TowerError::BadDirection(from, to));
        }
        let mut acc = StructureMap::identity(self.levels[from].graph);
        for i in (to..from).rev() {
            acc = compose(&self.bonds[i], &acc)?;
        }
        Ok(acc)
    }

    /// Appends a level that maps onto both the current top and the target.
    /// See [`extend_tower`] for the construction.
    pub fn extend(&mut self, target: &RelStructure) -> Result<&RecordedTarget, TowerError> {
        if !is_in_family_f(target)? {
            return Err(TowerError::TargetNotInFamily);
        }
        let top = self.top().clone();
        let top_graph = top.graph;

        // Present the top level as a plain antidiagonal structure of the
        // same size, jointly cover it with the target, and relabel the
        // joint cover as a signed structure. Joint covers of an even-sized
        // structure are even-sized, so the relabeling always applies; the
        // doubling step is a guard, not an expected path.
        let plain_top = LinearGraph::plain(top_graph.len() as i64).expect("levels are nonempty");
        let into_signed = order_isomorphism(plain_top, top_graph)?;
        let witness = jpp_witness(&RelStructure::antidiagonal_on(plain_top), target)?;
        let mut joint = witness.domain;
        let mut to_top_plain = witness.to_first;
        let mut to_target = witness.to_second;
        if joint.graph.len() % 2 == 1 {
            let (doubled, down) = double_antidiagonal(&joint)?;
            to_top_plain = compose(&to_top_plain, &down)?;
            to_target = compose(&to_target, &down)?;
            joint = doubled;
        }

        let new_graph = LinearGraph::signed((joint.graph.len() / 2) as i64)
            .expect("joint covers are nonempty");
        let new_level = RelStructure::antidiagonal_on(new_graph);
        let into_plain = order_isomorphism(new_graph, joint.graph)?;
        let bond = compose(&into_signed, &compose(&to_top_plain, &into_plain)?)?;
        let cover = compose(&to_target, &into_plain)?;

        let level = self.levels.len();
        if !bond.is_antisymmetric() {
            return Err(TowerError::Invalid {
                level,
                reason: "new bond is not antisymmetric".to_string(),
            });
        }
        if !is_epimorphism(&bond, &new_level, &top)? {
            return Err(TowerError::Invalid {
                level,
                reason: "new bond is not an epimorphism onto the old top".to_string(),
            });
        }
        if !is_epimorphism(&cover, &new_level, target)? {
            return Err(TowerError::Invalid {
                level,
                reason: "new level does not cover the requested target".to_string(),
            });
        }

        self.flips.push(flip(new_graph).map);
        self.levels.push(new_level);
        self.bonds.push(bond);
        self.records.push(RecordedTarget {
            level,
            target: target.clone(),
            cover,
        });
        Ok(self.records.last().expect("just pushed"))
    }

    /// Serializes levels and bonds, one `level n` header per stage.
    pub fn to_text(&self) -> String {
        let mut out = format!("# tower with {} levels\n", self.height());
        for (i, level) in self.levels.iter().enumerate() {
            out.push_str(&format!("level {i}\n"));
            let name = level_name(i);
            out.push_str(&graph_line(&name, level.graph));
            out.push('\n');
            if let Some(s) = &level.s {
                for line in relation_lines(&name, s) {
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            if i > 0 {
                for line in map_lines(
                    &format!("bond{}", i - 1),
                    &name,
                    &level_name(i - 1),
                    &self.bonds[i - 1],
                ) {
                    out.push_str(&line);
                    out.push('\n');
                }
            }
            out.push('\n');
        }
        out
    }

    /// Reads a tower back from its text form. Stage boundaries come from
    /// the `level n` headers; each stage must declare exactly one graph
    /// with a relation, and every stage above the first must declare the
    /// bond onto the previous stage's graph. Recorded targets are not part
    /// of the text form.
    pub fn from_text(text: &str) -> Result<Tower, TextError> {
        let mut parser = Parser::new();
        let mut level_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw).trim();
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.first() == Some(&"level") {
                let expected = level_lines.len().to_string();
                if tokens.len() != 2 || tokens[1] != expected {
                    return Err(TextError {
                        line: lineno,
                        message: format!(
                            "expected header \"level {expected}\", found {line:?}"
                        ),
                    });
                }
                level_lines.push(lineno);
                continue;
            }
            parser.feed(lineno, raw)?;
        }
        let doc = parser.finish()?;
        let fail = |line: usize, message: String| TextError { line, message };

        let n = level_lines.len();
        if n == 0 {
            return Err(fail(1, "a tower needs at least one level header".into()));
        }
        if doc.graphs.len() != n {
            return Err(fail(
                *level_lines.last().expect("nonempty"),
                format!("{n} levels but {} graphs declared", doc.graphs.len()),
            ));
        }
        if doc.maps.len() != n - 1 {
            return Err(fail(
                *level_lines.last().expect("nonempty"),
                format!("{n} levels need {} bonds, found {}", n - 1, doc.maps.len()),
            ));
        }
        let names: Vec<String> = doc.graphs.keys().cloned().collect();
        let mut levels = Vec::new();
        let mut flips = Vec::new();
        for (i, name) in names.iter().enumerate() {
            let structure = doc.structure(name).expect("name comes from the index");
            if structure.s.is_none() {
                return Err(fail(
                    level_lines[i],
                    format!("level {i} ({name}) declares no relation"),
                ));
            }
            flips.push(flip(structure.graph).map);
            levels.push(structure);
        }
        let mut bonds = Vec::new();
        for (i, named) in doc.maps.iter().enumerate() {
            if named.src != names[i + 1] || named.dst != names[i] {
                return Err(fail(
                    level_lines[i + 1],
                    format!(
                        "bond {} must map {} onto {}, not {} onto {}",
                        named.name,
                        names[i + 1],
                        names[i],
                        named.src,
                        named.dst
                    ),
                ));
            }
            bonds.push(named.map.clone());
        }
        Ok(Tower {
            levels,
            bonds,
            flips,
            records: Vec::new(),
        })
    }
}

fn level_name(i: usize) -> String {
    format!("L{i}")
}

/// Functional form of [`Tower::extend`]: returns the grown tower, leaving
/// the input untouched.
pub fn extend_tower(tower: &Tower, target: &RelStructure) -> Result<Tower, TowerError> {
    let mut grown = tower.clone();
    grown.extend(target)?;
    Ok(grown)
}

/// Revalidates every tower invariant with the oracle: levels are signed
/// antidiagonal structures, bonds are antisymmetric epimorphisms between
/// consecutive levels, flips commute with bonds, and every recorded target
/// is covered by its level.
pub fn check_tower(tower: &Tower) -> VerificationReport {
    let started = Instant::now();
    let mut instances = 0usize;
    let mut failures = Vec::new();

    for (i, level) in tower.levels.iter().enumerate() {
        instances += 1;
        if !level.graph.is_signed() {
            failures.push(format!("level {i}: graph {} is not signed", level.graph));
        }
        match &level.s {
            None => failures.push(format!("level {i}: no relation")),
            Some(s) if !s.is_antidiagonal() => {
                failures.push(format!("level {i}: relation is not the antidiagonal"))
            }
            Some(_) => {}
        }
    }

    for (i, bond) in tower.bonds.iter().enumerate() {
        instances += 1;
        let upper = &tower.levels[i + 1];
        let lower = &tower.levels[i];
        if bond.domain() != upper.graph || bond.codomain() != lower.graph {
            failures.push(format!(
                "bond {i}: maps {} to {}, expected {} to {}",
                bond.domain(),
                bond.codomain(),
                upper.graph,
                lower.graph
            ));
            continue;
        }
        if !bond.is_antisymmetric() {
            failures.push(format!("bond {i}: not antisymmetric"));
        }
        match is_epimorphism(bond, upper, lower) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("bond {i}: not an epimorphism")),
            Err(e) => failures.push(format!("bond {i}: {e}")),
        }
        instances += 1;
        let lower_flip_first = compose(&tower.flips[i], bond);
        let upper_flip_first = compose(bond, &tower.flips[i + 1]);
        match (lower_flip_first, upper_flip_first) {
            (Ok(a), Ok(b)) => {
                if !a.same_map(&b) {
                    failures.push(format!("bond {i}: does not commute with the flips"));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("bond {i}: {e}")),
        }
    }

    for (k, rec) in tower.records.iter().enumerate() {
        instances += 1;
        if rec.level >= tower.levels.len() {
            failures.push(format!("record {k}: level {} out of range", rec.level));
            continue;
        }
        match is_epimorphism(&rec.cover, &tower.levels[rec.level], &rec.target) {
            Ok(true) => {}
            Ok(false) => failures.push(format!(
                "record {k}: level {} does not cover its target",
                rec.level
            )),
            Err(e) => failures.push(format!("record {k}: {e}")),
        }
    }

    VerificationReport::from_run("tower", instances, failures, started)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::CoverError;
    use crate::structure::Relation;

    fn plain(n: i64) -> LinearGraph {
        LinearGraph::plain(n).unwrap()
    }

    fn member_on_two() -> RelStructure {
        let full = Relation::new(plain(2), [(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        RelStructure::with_relation(full)
    }

    #[test]
    fn fresh_tower_has_one_level_and_passes() {
        let t = new_tower();
        assert_eq!(t.height(), 1);
        assert_eq!(t.top().graph.len(), 2);
        assert_eq!(t.flips()[0].apply(1), -1);
        let report = check_tower(&t);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn extending_by_an_antidiagonal_covers_it() {
        let mut t = new_tower();
        let target = RelStructure::antidiagonal_on(plain(2));
        let recorded_level = t.extend(&target).unwrap().level;
        assert_eq!(recorded_level, 1);
        assert_eq!(t.height(), 2);
        assert_eq!(t.top().graph, LinearGraph::signed(2).unwrap());
        assert_eq!(t.bonds()[0].images(), &[-1, -1, 1, 1]);
        let report = check_tower(&t);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn extending_by_a_singleton_keeps_the_size() {
        let mut t = new_tower();
        let singleton = RelStructure::antidiagonal_on(plain(1));
        t.extend(&singleton).unwrap();
        assert_eq!(t.top().graph.len(), 2);
        assert!(check_tower(&t).passed());
    }

    #[test]
    fn extending_by_a_symmetric_member_goes_through_its_cover() {
        let mut t = new_tower();
        t.extend(&member_on_two()).unwrap();
        assert!(t.top().graph.len() >= 4);
        let report = check_tower(&t);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(t.records().len(), 1);
    }

    #[test]
    fn non_symmetric_members_cannot_be_covered() {
        // In-family targets whose relation is not symmetric have no
        // antidiagonal cover (antidiagonal images are symmetric), so the
        // extension step reports the obstruction instead of looping.
        let s = Relation::new(
            plain(4),
            [(1, 3), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)],
        )
        .unwrap();
        let target = RelStructure::with_relation(s);
        assert_eq!(is_in_family_f(&target), Ok(true));
        let mut t = new_tower();
        let e = t.extend(&target).unwrap_err();
        assert!(matches!(
            e,
            TowerError::Amalgam(AmalgamError::Cover(CoverError::NotCoverable { .. }))
        ));
        assert_eq!(t.height(), 1, "failed extensions must not change the tower");
    }

    #[test]
    fn rejects_targets_outside_the_family() {
        let lonely = Relation::new(plain(2), [(1, 2)]).unwrap();
        let target = RelStructure::with_relation(lonely);
        let mut t = new_tower();
        assert!(matches!(
            t.extend(&target),
            Err(TowerError::TargetNotInFamily)
        ));
    }

    #[test]
    fn bond_through_composes_downward() {
        let mut t = new_tower();
        t.extend(&RelStructure::antidiagonal_on(plain(2))).unwrap();
        t.extend(&RelStructure::antidiagonal_on(plain(3))).unwrap();
        let direct = t.bond_through(2, 0).unwrap();
        let step = compose(&t.bonds()[0], &t.bonds()[1]).unwrap();
        assert!(direct.same_map(&step));
        let idem = t.bond_through(1, 1).unwrap();
        assert!(idem.same_map(&StructureMap::identity(t.levels()[1].graph)));
        assert!(matches!(
            t.bond_through(0, 2),
            Err(TowerError::BadDirection(0, 2))
        ));
        assert!(matches!(
            t.bond_through(9, 0),
            Err(TowerError::LevelOutOfRange(9, 3))
        ));
    }

    #[test]
    fn text_round_trip_preserves_levels_and_bonds() {
        let mut t = new_tower();
        t.extend(&RelStructure::antidiagonal_on(plain(2))).unwrap();
        t.extend(&member_on_two()).unwrap();
        let text = t.to_text();
        let back = Tower::from_text(&text).unwrap();
        assert_eq!(back.levels(), t.levels());
        assert_eq!(back.bonds().len(), t.bonds().len());
        for (a, b) in back.bonds().iter().zip(t.bonds()) {
            assert!(a.same_map(b));
        }
        assert!(check_tower(&back).passed());
    }

    #[test]
    fn corrupted_bond_is_detected() {
        let mut t = new_tower();
        t.extend(&RelStructure::antidiagonal_on(plain(2))).unwrap();
        let text = t.to_text();
        // The serialized bond sends -2 -> -1 and 2 -> 1; break antisymmetry.
        let corrupted = text.replace("2 -> 1", "2 -> -1");
        assert_ne!(corrupted, text);
        let bad = Tower::from_text(&corrupted).unwrap();
        let report = check_tower(&bad);
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.contains("bond 0")));
    }

    #[test]
    fn malformed_tower_text_is_rejected() {
        assert!(Tower::from_text("graph L0 signed 1\n").is_err());
        let missing_rel = "level 0\ngraph L0 signed 1\n";
        let e = Tower::from_text(missing_rel).unwrap_err();
        assert!(e.message.contains("no relation"));
        let bad_order = "level 1\ngraph L0 signed 1\nrel L0 antidiagonal\n";
        assert!(Tower::from_text(bad_order).is_err());
    }
}
