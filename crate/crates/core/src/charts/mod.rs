//! The generic fiber over `k(t)` and the charts of the resolution over
//! `k[t]/(t^N)`.

pub mod chart;
pub mod generic;

pub use chart::{
    chart_equivalence_fuzz, chart_is_flat, chart_point, classify_slices, equation_status, ChartModel, ChartSample,
    EquationStatus, FuzzReport, FuzzWitness, SliceReport,
};
pub use generic::{
    from_grassmannian, generic_roundtrip, idempotent_split, resolution_section, EigenProjectors, GenericModel,
    RoundtripReport,
};

#[cfg(test)]
mod tests;
