//! Finite categories with strict group actions, their cocycle categories,
//! morphisms of G-categories, and the orbit-coproduct monad.

pub mod action;
pub mod category;
pub mod fixtures;
pub mod monad;
pub mod morphism;

pub use action::{
    check_g_category, cocycle_check, end_cocycle_iso, h1_decomposition, induced_end_action,
    z1_category, CatCocycle, EndAction, EndCocycleIso, GCatAction, H1Decomposition, Z1Category,
};
pub use category::{check_functor, FinCategory, FinFunctor};
pub use monad::{
    build_g_monad, check_coproducts, check_monad, cocycle_algebra_iso, comparison_k_gamma,
    em_category, gamma_monad_morphism, is_galois_monad, monad_check, CocycleAlgebraIso,
    EMAlgebra, FinMonad, GCoproducts, MonadFixture,
};
pub use morphism::{
    canonical_factorization, compose_gcat_morphisms, end_factorization_check,
    gcat_morphism_check, z1_functor, GCatMorphism,
};
