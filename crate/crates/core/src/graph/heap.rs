//! Addressable binary min-heap over node ids with decrease-key.
//!
//! Each id in `0..capacity` moves through three colors: never inserted, in
//! the heap, removed. Removal is final. Equal keys pop in insertion order.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    NeverInserted,
    InHeap,
    Removed,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeapError {
    #[error("node {id} is outside the heap capacity {capacity}")]
    OutOfRange { id: usize, capacity: usize },
    #[error("node {id} cannot be inserted: it is {color:?}")]
    AlreadyInserted { id: usize, color: Color },
    #[error("node {id} is not in the heap (it is {color:?})")]
    NotInHeap { id: usize, color: Color },
    #[error("rejected update for node {id}: new key is not smaller than the current key")]
    RejectedUpdate { id: usize },
    #[error("key for node {id} is not comparable (NaN)")]
    IncomparableKey { id: usize },
    #[error("pop from an empty heap")]
    Empty,
}

const NO_SLOT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct CostHeap<K> {
    slots: Vec<usize>,
    key: Vec<K>,
    order: Vec<u64>,
    position: Vec<usize>,
    color: Vec<Color>,
    insertions: u64,
}

impl<K: PartialOrd + Copy> CostHeap<K> {
    /// Creates an empty heap addressing ids `0..capacity`.
    pub fn new(capacity: usize, init: K) -> Self {
        CostHeap {
            slots: Vec::with_capacity(capacity),
            key: vec![init; capacity],
            order: vec![0; capacity],
            position: vec![NO_SLOT; capacity],
            color: vec![Color::NeverInserted; capacity],
            insertions: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.color.len()
    }

    pub fn color(&self, id: usize) -> Color {
        self.color[id]
    }

    /// Current key of an id that has been inserted at some point.
    pub fn key(&self, id: usize) -> Option<K> {
        match self.color.get(id) {
            Some(Color::NeverInserted) | None => None,
            Some(_) => Some(self.key[id]),
        }
    }

    pub fn peek(&self) -> Option<(usize, K)> {
        self.slots.first().map(|&id| (id, self.key[id]))
    }

    pub fn insert(&mut self, id: usize, key: K) -> Result<(), HeapError> {
        self.check_range(id)?;
        if self.color[id] != Color::NeverInserted {
            return Err(HeapError::AlreadyInserted {
                id,
                color: self.color[id],
            });
        }
        if key.partial_cmp(&key).is_none() {
            return Err(HeapError::IncomparableKey { id });
        }
        self.key[id] = key;
        self.order[id] = self.insertions;
        self.insertions += 1;
        self.color[id] = Color::InHeap;
        self.position[id] = self.slots.len();
        self.slots.push(id);
        self.sift_up(self.slots.len() - 1);
        Ok(())
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn decrease_key(&mut self, id: usize, new_key: K) -> Result<(), HeapError> {
        self.check_range(id)?;
        if self.color[id] != Color::InHeap {
            return Err(HeapError::NotInHeap {
                id,
                color: self.color[id],
            });
        }
        // Also rejects NaN, which never compares less.
        if !(new_key < self.key[id]) {
            return Err(HeapError::RejectedUpdate { id });
        }
        self.key[id] = new_key;
        self.sift_up(self.position[id]);
        Ok(())
    }

    pub fn pop_min(&mut self) -> Result<(usize, K), HeapError> {
        let last = self.slots.len().checked_sub(1).ok_or(HeapError::Empty)?;
        self.swap_slots(0, last);
        let id = self.slots.pop().expect("non-empty");
        self.position[id] = NO_SLOT;
        self.color[id] = Color::Removed;
        if !self.slots.is_empty() {
            self.sift_down(0);
        }
        Ok((id, self.key[id]))
    }

    /// Verifies heap order and the position map. Linear time.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (slot, &id) in self.slots.iter().enumerate() {
            if self.position[id] != slot {
                return Err(format!("position of {id} is {} but it sits in slot {slot}", self.position[id]));
            }
            if self.color[id] != Color::InHeap {
                return Err(format!("{id} occupies slot {slot} with color {:?}", self.color[id]));
            }
            if slot > 0 {
                let parent = self.slots[(slot - 1) / 2];
                if self.precedes(id, parent) {
                    return Err(format!("child {id} precedes its parent {parent}"));
                }
            }
        }
        for (id, color) in self.color.iter().enumerate() {
            let placed = self.position[id] != NO_SLOT;
            if placed != (*color == Color::InHeap) {
                return Err(format!("{id} has color {color:?} but slot {}", self.position[id]));
            }
        }
        Ok(())
    }

    fn check_range(&self, id: usize) -> Result<(), HeapError> {
        if id >= self.color.len() {
            Err(HeapError::OutOfRange {
                id,
                capacity: self.color.len(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn precedes(&self, a: usize, b: usize) -> bool {
        let (ka, kb) = (self.key[a], self.key[b]);
        ka < kb || (!(kb < ka) && self.order[a] < self.order[b])
    }

    #[inline]
    fn swap_slots(&mut self, i: usize, j: usize) {
        self.slots.swap(i, j);
        self.position[self.slots[i]] = i;
        self.position[self.slots[j]] = j;
    }

    fn sift_up(&mut self, mut slot: usize) {
        while slot > 0 {
            let parent = (slot - 1) / 2;
            if !self.precedes(self.slots[slot], self.slots[parent]) {
                break;
            }
            self.swap_slots(slot, parent);
            slot = parent;
        }
    }

    fn sift_down(&mut self, mut slot: usize) {
        let len = self.slots.len();
        loop {
            let left = 2 * slot + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let mut best = left;
            if right < len && self.precedes(self.slots[right], self.slots[left]) {
                best = right;
            }
            if !self.precedes(self.slots[best], self.slots[slot]) {
                break;
            }
            self.swap_slots(slot, best);
            slot = best;
        }
    }
}
