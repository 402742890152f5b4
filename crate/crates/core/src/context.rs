//! A group together with its enumerated classes and lazily computed
//! derived data (character table, normal-subgroup lattice).

use once_cell::unsync::OnceCell;

use crate::chartab::{character_table, CharacterTable};
use crate::classes::ClassData;
use crate::config::Config;
use crate::error::Result;
use crate::permgrp::{coset_action, CosetAction, PermGroup};
use crate::structure::{normal_subgroups, NormalSubgroupLattice};
use crate::vanishing::{vanishing_profile, VanishingProfile};

pub struct GroupContext {
    group: PermGroup,
    classes: ClassData,
    config: Config,
    table: OnceCell<CharacterTable>,
    profile: OnceCell<VanishingProfile>,
    lattice: OnceCell<NormalSubgroupLattice>,
}

/// `G/N` together with the map from `G`.
pub struct Quotient {
    pub action: CosetAction,
    pub context: GroupContext,
}

impl GroupContext {
    pub fn new(group: PermGroup, config: &Config) -> Result<Self> {
        let classes = ClassData::new(&group, config)?;
        Ok(GroupContext {
            group,
            classes,
            config: config.clone(),
            table: OnceCell::new(),
            profile: OnceCell::new(),
            lattice: OnceCell::new(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.is_abelian()
    }

    pub fn character_table(&self) -> Result<&CharacterTable> {
        self.table
            .get_or_try_init(|| character_table(&self.classes, &self.config))
    }

    pub fn vanishing_profile(&self) -> Result<&VanishingProfile> {
        self.profile
            .get_or_try_init(|| Ok(vanishing_profile(self.character_table()?)))
    }

    pub fn lattice(&self) -> Result<&NormalSubgroupLattice> {
        self.lattice.get_or_try_init(|| normal_subgroups(self))
    }

    /// Classes whose representatives lie in `sub`. For a normal subgroup
    /// this is exactly its class decomposition.
    pub fn class_support(&self, sub: &PermGroup) -> Vec<usize> {
        self.classes
            .classes
            .iter()
            .filter(|c| sub.contains(&c.representative))
            .map(|c| c.index)
            .collect()
    }

    /// Element-table indices of the union of the given classes.
    pub fn elements_of_classes(&self, classes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = classes
            .iter()
            .flat_map(|&c| self.classes.members(c).iter().map(|&i| i as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn quotient(&self, normal: &PermGroup) -> Result<Quotient> {
        let action = coset_action(&self.group, normal, &self.config)?;
        let context = GroupContext::new(action.quotient.clone(), &self.config)?;
        Ok(Quotient { action, context })
    }

    /// Context for a subgroup, sharing this context's configuration.
    pub fn subgroup_context(&self, sub: &PermGroup) -> Result<GroupContext> {
        GroupContext::new(sub.clone(), &self.config)
    }
}
