//! Small exact and floating matrix tools.

pub mod pascal;
pub mod triangular;
pub mod vandermonde;

pub use pascal::{
    pascal_char_poly_exact, pascal_eigenvalue_lower_bound, pascal_largest_eigenvalue,
    pascal_exact, pascal_leading_minors_exact, pascal_matrix, pascal_min_eigenvalue, pascal_min_eigenvector,
    pascal_quadratic_lower_bound,
};
pub use triangular::{solve_triangular, triangular_matrix, xi_display, xi_proof, PolyP, TriangularSolution};
pub use vandermonde::{
    solve_vandermonde, vandermonde_abs_sum_exact, vandermonde_constant, vandermonde_inverse_exact,
    vandermonde_row_sums_exact,
};
