//! Everything computed about one named group, and its JSON report form.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::catalog::NamedGroup;
use crate::chartab::CharacterTable;
use crate::config::Config;
use crate::context::GroupContext;
use crate::error::Result;
use crate::frobenius::{
    frobenius_decomposition, is_2_frobenius, is_nearly_2_frobenius, FrobeniusDecomposition,
    NearlyTwoFrobeniusWitness, TwoFrobeniusWitness,
};
use crate::numbers::prime_divisors;
use crate::structure::{structure_report, StructureReport};
use crate::vanishing::{
    max_vanishing_classes_per_character, vanishing_prime_graph, PrimeGraph, VanishingProfile,
};

pub struct Analysis {
    pub name: String,
    pub tags: BTreeSet<String>,
    pub context: GroupContext,
    pub structure: StructureReport,
    pub frobenius: Option<FrobeniusDecomposition>,
}

impl Analysis {
    pub fn new(named: &NamedGroup, config: &Config) -> Result<Self> {
        let context = GroupContext::new(named.group.clone(), config)?;
        context.vanishing_profile()?;
        let structure = structure_report(&context)?;
        let frobenius = frobenius_decomposition(&context)?;
        Ok(Analysis {
            name: named.name.clone(),
            tags: named.tags.clone(),
            context,
            structure,
            frobenius,
        })
    }

    pub fn order(&self) -> u64 {
        self.context.order()
    }

    pub fn table(&self) -> &CharacterTable {
        self.context.character_table().expect("computed in Analysis::new")
    }

    pub fn profile(&self) -> &VanishingProfile {
        self.context.vanishing_profile().expect("computed in Analysis::new")
    }

    pub fn prime_graph(&self) -> PrimeGraph {
        vanishing_prime_graph(self.profile())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub index: usize,
    pub representative: String,
    pub size: u64,
    pub order: u64,
    pub vanishing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableSummary {
    pub degrees: Vec<u64>,
    /// Values in `Z[ζ_e]` rendered as `a0 + a1*ze^k …`.
    pub values: Vec<Vec<String>>,
    pub exponent: u64,
    pub dixon_prime: u64,
    /// Rows of `p`-defect zero (non-linear) for each prime divisor `p`.
    pub defect_zero_rows: BTreeMap<u64, Vec<usize>>,
    pub max_zeros_per_row: usize,
}

impl TableSummary {
    pub fn new(table: &CharacterTable) -> Self {
        let defect_zero_rows = prime_divisors(table.group_order)
            .into_iter()
            .map(|p| {
                let rows = (0..table.len())
                    .filter(|&r| table.degrees[r] > 1 && table.is_p_defect_zero(r, p))
                    .collect();
                (p, rows)
            })
            .collect();
        TableSummary {
            degrees: table.degrees.clone(),
            values: table
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            exponent: table.exponent,
            dixon_prime: table.dixon_prime,
            defect_zero_rows,
            max_zeros_per_row: max_vanishing_classes_per_character(table),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusSummary {
    pub decomposition: Option<FrobeniusDecomposition>,
    pub two_frobenius: Option<TwoFrobeniusWitness>,
    pub nearly_two_frobenius: Option<NearlyTwoFrobeniusWitness>,
}

/// The `analyze` report.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub order: u64,
    pub degree: usize,
    pub generators: Vec<String>,
    pub tags: BTreeSet<String>,
    pub classes: Vec<ClassSummary>,
    pub character_table: TableSummary,
    pub vanishing: VanishingProfile,
    pub prime_graph: PrimeGraph,
    pub structure: StructureReport,
    pub frobenius: FrobeniusSummary,
    pub verdicts: Vec<crate::verifier::TheoremVerdict>,
}

pub fn analysis_report(a: &Analysis) -> Result<AnalysisReport> {
    let profile = a.profile();
    let classes = a
        .context
        .classes()
        .classes
        .iter()
        .map(|c| ClassSummary {
            index: c.index,
            representative: c.representative.to_string(),
            size: c.size,
            order: c.element_order,
            vanishing: profile.is_vanishing(c.index),
        })
        .collect();
    Ok(AnalysisReport {
        name: a.name.clone(),
        order: a.order(),
        degree: a.context.group().degree(),
        generators: a.context.group().generator_strings(),
        tags: a.tags.clone(),
        classes,
        character_table: TableSummary::new(a.table()),
        vanishing: profile.clone(),
        prime_graph: a.prime_graph(),
        structure: a.structure.clone(),
        frobenius: FrobeniusSummary {
            decomposition: a.frobenius.clone(),
            two_frobenius: is_2_frobenius(&a.context)?,
            nearly_two_frobenius: is_nearly_2_frobenius(&a.context)?,
        },
        verdicts: crate::verifier::check_all(a),
    })
}
