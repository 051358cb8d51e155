use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PromptRequest, ProposerError, ProposerResponse, wrap_bodies};
use crate::slots::{Catalog, SlotName};

/// Offline proposer. Each slot's catalog variants are shuffled once per
/// seed and then handed out round-robin, so every variant appears before
/// any repeats.
#[derive(Clone, Debug)]
pub struct MockProposer {
    catalog: Catalog,
    order: BTreeMap<SlotName, Vec<usize>>,
    cursor: BTreeMap<SlotName, usize>,
}

impl MockProposer {
    pub fn new(catalog: Catalog, seed: u64) -> Self {
        let mut order = BTreeMap::new();
        for slot in SlotName::ALL {
            let mut idx: Vec<usize> = (0..catalog.variants(slot).len()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(slot.index() as u64));
            idx.shuffle(&mut rng);
            order.insert(slot, idx);
        }
        MockProposer {
            catalog,
            order,
            cursor: BTreeMap::new(),
        }
    }

    /// Name of the variant the next request for `slot` will return.
    pub fn peek(&self, slot: SlotName) -> Option<&str> {
        let order = &self.order[&slot];
        if order.is_empty() {
            return None;
        }
        let k = self.cursor.get(&slot).copied().unwrap_or(0) % order.len();
        Some(&self.catalog.variants(slot)[order[k]].name)
    }

    pub fn propose(&mut self, request: &PromptRequest) -> Result<ProposerResponse, ProposerError> {
        if request.slots.is_empty() {
            return Err(ProposerError::NoSlots);
        }
        for &slot in &request.slots {
            if self.order[&slot].is_empty() {
                return Err(ProposerError::EmptyCatalog(slot));
            }
        }
        let mut bodies = BTreeMap::new();
        for &slot in &request.slots {
            let order = &self.order[&slot];
            let c = self.cursor.entry(slot).or_insert(0);
            let variant = &self.catalog.variants(slot)[order[*c % order.len()]];
            *c += 1;
            bodies.insert(slot, variant.body.clone());
        }
        Ok(ProposerResponse {
            raw: wrap_bodies(&bodies),
            bodies,
            attempts: 1,
        })
    }
}
