//! The full verification pipeline for one connection matrix, and its JSON
//! and text renderings.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::autgroup::{
    automorphism_group, check_block_stabilizer_criterion, BlockStabilizerCheck, Permutation,
};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::mcayley::{
    connection_is_oriented, ConnectionMatrix, ConnectionMatrixJson, MCayleyDigraph,
};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "OMSR")]
    Omsr,
    #[serde(rename = "NOT-OMSR")]
    NotOmsr,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Omsr => "OMSR",
            Verdict::NotOmsr => "NOT-OMSR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub oriented: bool,
    pub regular3: bool,
    pub connected: bool,
    pub aut_order: u128,
    pub group_order_expected: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub cycles: String,
    pub images: Vec<usize>,
}

impl From<&Permutation> for GeneratorRecord {
    fn from(p: &Permutation) -> Self {
        GeneratorRecord {
            cycles: p.to_string(),
            images: p.images().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub group: String,
    pub group_order: usize,
    pub m: usize,
    pub family: Option<String>,
    pub checks: Checks,
    /// Present when the digraph is connected.
    pub block_criterion: Option<BlockStabilizerCheck>,
    pub generators: Vec<GeneratorRecord>,
    pub matrix: ConnectionMatrixJson,
    pub elapsed_ms: f64,
}

/// Builds the digraph and runs every check.
pub fn verify_matrix(
    group: &FiniteGroup,
    group_label: &str,
    matrix: &ConnectionMatrix,
    family: Option<&str>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let gamma = MCayleyDigraph::build(group, matrix)?;
    let graph = gamma.graph();
    let oriented = graph.is_oriented();
    debug_assert_eq!(oriented, connection_is_oriented(group, matrix));
    let regular3 = graph.is_k_regular(3);
    let connected = graph.is_weakly_connected();
    let aut = automorphism_group(graph, None)?;
    let aut_order = aut.order();
    let verdict = if oriented && regular3 && aut_order == group.order() as u128 {
        Verdict::Omsr
    } else {
        Verdict::NotOmsr
    };
    let block_criterion = if connected {
        let reps: Vec<usize> = (0..matrix.m()).map(|i| gamma.vertex(0, i)).collect();
        Some(check_block_stabilizer_criterion(&gamma, &aut, &reps)?)
    } else {
        None
    };
    Ok(VerificationReport {
        schema: REPORT_SCHEMA,
        group: group_label.to_string(),
        group_order: group.order(),
        m: matrix.m(),
        family: family.map(str::to_string),
        checks: Checks {
            oriented,
            regular3,
            connected,
            aut_order,
            group_order_expected: group.order(),
            verdict,
        },
        block_criterion,
        generators: aut.generators().iter().map(GeneratorRecord::from).collect(),
        matrix: matrix.to_json(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let c = &self.checks;
        writeln!(
            f,
            "group            {} (order {})",
            self.group, self.group_order
        )?;
        writeln!(f, "m                {}", self.m)?;
        if let Some(fam) = &self.family {
            writeln!(f, "family           {fam}")?;
        }
        writeln!(f, "oriented         {}", yn(c.oriented))?;
        writeln!(f, "3-regular        {}", yn(c.regular3))?;
        writeln!(f, "connected        {}", yn(c.connected))?;
        writeln!(f, "|Aut|            {}", c.aut_order)?;
        writeln!(f, "|G|              {}", c.group_order_expected)?;
        if let Some(b) = &self.block_criterion {
            writeln!(f, "block criterion  {}", yn(b.holds()))?;
        }
        writeln!(f, "generators")?;
        for g in &self.generators {
            writeln!(f, "  {}", g.cycles)?;
        }
        write!(f, "verdict          {}", c.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_example() -> (FiniteGroup, ConnectionMatrix) {
        let g = FiniteGroup::cyclic(4).unwrap();
        let mut t = ConnectionMatrix::empty(2);
        t.set(0, 0, [1]);
        t.set(1, 1, [1]);
        t.set(0, 1, [0, 1]);
        t.set(1, 0, [1, 2]);
        (g, t)
    }

    #[test]
    fn worked_example_is_not_omsr() {
        let (g, t) = z4_example();
        let r = verify_matrix(&g, "cyclic:4", &t, None).unwrap();
        assert_eq!(r.checks.aut_order, 8);
        assert_eq!(r.checks.verdict, Verdict::NotOmsr);
        assert!(r.checks.oriented && r.checks.regular3 && r.checks.connected);
        assert!(!r.block_criterion.as_ref().unwrap().holds());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["checks"]["verdict"], "NOT-OMSR");
        assert!(r.to_string().contains("NOT-OMSR"));
    }

    #[test]
    fn empty_matrix_is_not_regular() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let r = verify_matrix(&g, "cyclic:3", &ConnectionMatrix::empty(2), None).unwrap();
        assert!(!r.checks.regular3);
        assert_eq!(r.checks.verdict, Verdict::NotOmsr);
        assert!(r.block_criterion.is_none());
    }
}
