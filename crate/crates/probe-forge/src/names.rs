//! Fixed name and value lists. Shipping these with the generator keeps
//! instances reproducible without external word lists.

use crate::spec::SurfaceForm;

/// People for the points-scoring surface.
pub const PEOPLE: [&str; 8] = ["Alice", "Ben", "Carol", "Dana", "Evan", "Fiona", "Gus", "Hana"];

/// Item kinds for the single-entity inventory surface (lowercase plural).
pub const ITEMS: [&str; 8] =
    ["widgets", "gadgets", "sprockets", "crates", "bolts", "panels", "spools", "valves"];

/// Account holders for the bank-accounts surface.
pub const HOLDERS: [&str; 8] = ["Ivy", "Jonas", "Kira", "Liam", "Mara", "Noel", "Opal", "Petra"];

/// Capitalized item names for multi-entity inventory probes.
pub const MULTI_ITEMS: [&str; 10] = [
    "Widget", "Gadget", "Sprocket", "Doohickey", "Gizmo", "Flange", "Bracket", "Spindle",
    "Coupler", "Washer",
];

pub const COLORS: [&str; 8] =
    ["red", "blue", "green", "yellow", "purple", "orange", "white", "black"];

pub const LOCATIONS: [&str; 8] =
    ["kitchen", "garage", "office", "hallway", "attic", "basement", "garden", "lobby"];

pub const STATUSES: [&str; 8] =
    ["idle", "active", "paused", "blocked", "ready", "offline", "standby", "busy"];

/// Subjects whose attribute gets reassigned, per non-arithmetic surface.
pub fn attribute_subject(surface: SurfaceForm) -> &'static str {
    match surface {
        SurfaceForm::Color => "marker",
        SurfaceForm::Location => "cart",
        SurfaceForm::Status => "server",
        _ => unreachable!("attribute subjects exist only for non-arithmetic surfaces"),
    }
}

/// Value list for a non-arithmetic surface.
pub fn attribute_values(surface: SurfaceForm) -> &'static [&'static str] {
    match surface {
        SurfaceForm::Color => &COLORS,
        SurfaceForm::Location => &LOCATIONS,
        SurfaceForm::Status => &STATUSES,
        _ => unreachable!("attribute values exist only for non-arithmetic surfaces"),
    }
}

/// Entity-name list for an arithmetic surface.
pub fn arithmetic_entities(surface: SurfaceForm) -> &'static [&'static str] {
    match surface {
        SurfaceForm::Points => &PEOPLE,
        SurfaceForm::Inventory => &ITEMS,
        SurfaceForm::Accounts => &HOLDERS,
        _ => unreachable!("entity names exist only for arithmetic surfaces"),
    }
}

/// Name for the i-th multi-entity item (falls back to `Part<i>` past the
/// fixed list).
pub fn multi_item_name(i: usize) -> String {
    MULTI_ITEMS.get(i).map_or_else(|| format!("Part{}", i + 1), |n| (*n).to_string())
}
