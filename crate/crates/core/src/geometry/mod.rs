//! Metric-affine structure: torsion, nonmetricity, Cartan connection, curvature,
//! Lie derivatives and identity residuals.

mod derived;
mod identities;
mod lie;
pub mod oracle;
mod space;

pub use derived::{
    cartan_connection, cartan_space, cartan_symbol, christoffel, covariant_derivative, curvature,
    curvature_of, metric_covariant_derivative, nonmetricity, nonmetricity_contravariant,
    reconstruct_connection, ricci, riemann_space, scalar_curvature, shifted_curvature, torsion,
    torsion_from_gamma, CartanConnectionField, CartanSymbolField, CovariantDerivativeField,
    LeviCivitaField, TorsionField,
};
pub use identities::{bianchi_residual, commutator_residual, killing_cyclic_residual};
pub use lie::{
    killing2_residual, killing_residual, lie_derivative_connection,
    lie_derivative_connection_riemann, lie_derivative_metric, second_covariant_derivative,
};
pub use space::{ConnectionField, ConnectionKind, MetricAffineSpace, MetricField};
