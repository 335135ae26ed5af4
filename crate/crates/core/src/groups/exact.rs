use serde::Serialize;
use serde_json::json;

use super::GroupError;
use crate::report::{Check, Status};

/// `G_0 → G_1 → ⋯ → G_n` with group orders and image orders where known.
/// `images[i]` is the order of the image of `maps[i]: G_i → G_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactFragment {
    pub name: String,
    pub groups: Vec<(String, Option<u64>)>,
    pub maps: Vec<String>,
    pub images: Vec<Option<u64>>,
}

impl ExactFragment {
    pub fn new(
        name: impl Into<String>,
        groups: Vec<(String, Option<u64>)>,
        maps: Vec<String>,
        images: Vec<Option<u64>>,
    ) -> Result<Self, GroupError> {
        let name = name.into();
        if groups.len() < 2 || maps.len() != groups.len() - 1 || images.len() != maps.len() {
            return Err(GroupError::Malformed(format!(
                "{name}: {} groups need {} maps and image entries, got {} and {}",
                groups.len(),
                groups.len().saturating_sub(1),
                maps.len(),
                images.len()
            )));
        }
        Ok(ExactFragment { name, groups, maps, images })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionResult {
    pub group: String,
    pub order: Option<u64>,
    pub image_in: Option<u64>,
    pub image_out: Option<u64>,
    pub status: Status,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub fragment: String,
    /// Image orders after propagation.
    pub images: Vec<Option<u64>>,
    /// Which image orders were derived by exactness rather than given.
    pub derived: Vec<bool>,
    /// Interior positions `1..n`.
    pub positions: Vec<PositionResult>,
    pub status: Status,
}

impl ExactnessReport {
    pub fn position(&self, group: &str) -> Option<&PositionResult> {
        self.positions.iter().find(|p| p.group == group)
    }

    pub fn to_check(&self, cite: &str) -> Check {
        let children = self
            .positions
            .iter()
            .map(|p| {
                Check::leaf(
                    format!("exact at {}", p.group),
                    cite,
                    p.status,
                    json!({
                        "order": p.order,
                        "image_in": p.image_in,
                        "image_out": p.image_out,
                        "note": p.note,
                    }),
                )
            })
            .collect();
        Check::group(
            format!("exactness of {}", self.fragment),
            cite,
            json!({ "images": self.images, "derived": self.derived }),
            children,
        )
    }
}

/// At every interior `G_i`, exactness forces `|G_i| = |im in|·|im out|`.
///
/// Where `|G_i|` and one adjacent image order are known the other image
/// order is derived (and recorded as such); positions that still lack data
/// are reported incomplete, never failed.
pub fn exactness_check(frag: &ExactFragment) -> ExactnessReport {
    let n = frag.groups.len();
    let mut images = frag.images.clone();
    let mut derived = vec![false; images.len()];
    let mut used_for = vec![None::<usize>; n];
    let mut indivisible = vec![false; n];
    loop {
        let mut changed = false;
        for i in 1..n - 1 {
            let Some(order) = frag.groups[i].1 else { continue };
            let (slot, known) = match (images[i - 1], images[i]) {
                (Some(a), None) => (i, a),
                (None, Some(b)) => (i - 1, b),
                _ => continue,
            };
            if known == 0 || order % known != 0 {
                indivisible[i] = true;
                continue;
            }
            images[slot] = Some(order / known);
            derived[slot] = true;
            used_for[i] = Some(slot);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let positions = (1..n - 1)
        .map(|i| {
            let (group, order) = frag.groups[i].clone();
            let (a, b) = (images[i - 1], images[i]);
            let (status, note) = match (order, a, b) {
                _ if indivisible[i] => (Status::Fail, "known image order does not divide the group order".to_string()),
                (Some(o), Some(a), Some(b)) => match used_for[i] {
                    Some(slot) => (Status::Pass, format!("image of {} derived here", frag.maps[slot])),
                    None if a.checked_mul(b) == Some(o) => (Status::Pass, format!("{o} = {a}·{b}")),
                    None => (Status::Fail, format!("{o} != {a}·{b}")),
                },
                (None, Some(a), Some(b)) => (Status::Pass, format!("order derived as {a}·{b} = {}", a * b)),
                _ => (Status::Incomplete, "image order unresolved".to_string()),
            };
            PositionResult {
                group,
                order: order.or_else(|| a.zip(b).map(|(a, b)| a * b)),
                image_in: a,
                image_out: b,
                status,
                note,
            }
        })
        .collect::<Vec<_>>();
    let status = positions.iter().map(|p| p.status).max().unwrap_or(Status::Pass);
    ExactnessReport { fragment: frag.name.clone(), images, derived, positions, status }
}
