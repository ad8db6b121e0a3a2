//! Call-by-value multi types.
//!
//! ```text
//! linear types  A, B ::= G | M ⊸ N
//! multi types   M, N ::= [A1, ..., An]        (0 is the empty multiset)
//!
//!   ------------- ax     Γ ⊢ t:[M ⊸ N]   Δ ⊢ u:M        Γ, x:M ⊢ t:N
//!   x:[A] ⊢ x:A          ------------------------ @     ---------------- λ
//!                             Γ ⊎ Δ ⊢ t u : N           Γ ⊢ \x.t : M ⊸ N
//!
//!   Γ, x:M ⊢ t:N   Δ ⊢ u:M          (Γi ⊢ v:Ai)  i ∈ I
//!   ----------------------- es     -------------------- many  (v a variable
//!   Γ ⊎ Δ ⊢ t[x <- u] : N           ⊎Γi ⊢ v : [Ai]             or abstraction)
//! ```
//!
//! Shrinking types restrict where `0` may occur:
//!
//! ```text
//! right  M ::= [A1, ..., An]  n ≥ 1      A ::= G | M_left ⊸ M_right
//! left   M ::= [A1, ..., An]  n ≥ 0      A ::= G | M_right ⊸ M_left
//! ```

mod derivation;
mod ty;

pub use derivation::{check_derivation, deriv_size, is_shrinking, CheckError, Derivation, Judgment, Rhs, Rule};
pub use ty::{
    is_left, is_left_ctx, is_left_linear, is_right, is_right_linear, LinearType, MultiType, TypeContext,
};
