#pragma once
// Generated by tests/oracles/derive_fixtures.py; do not edit by hand.
#include <array>

namespace fixtures {

inline constexpr double ft_dirac_diff_at_pi_re = 2.0;
inline constexpr double ft_dirac_diff_at_pi_im = 4.1340642196527976473e-43;
inline constexpr double torus_coeff_dirac_diff_n1_re = 0.31830988618379067154;
inline constexpr double torus_coeff_dirac_diff_n1_im = 6.579567556170817089e-44;
inline constexpr double poisson_half_at_pi = 0.33333333333333333333;
inline constexpr double poisson_half_at_zero = 3.0;
inline constexpr double gauss_gram_012_min_eig = 0.2072387996650230364;
inline constexpr double dirichlet1_gram_equispaced_min_eig = 3.0;
inline constexpr double taylor_exp_deg10_half = 1.6487212706873656581;
inline constexpr double taylor_binomial_deg30_half = 1.9999999990686774254;
inline constexpr double inner_gauss_diff_dirac = 0.3934693402873665764;
inline constexpr double energy_gauss_dirac_diff = 0.78693868057473315279;
inline constexpr double embed_eval_gauss_half_0_2_at_1 = 0.6065306597126334236;
inline constexpr double witness_gap_gauss = 0.3934693402873665764;
inline constexpr double energy_poisson_dirac_pair_spatial = 5.3333333333333333333;
inline constexpr double energy_poisson_dirac_pair_series = 5.3333333333333333333;
inline constexpr double energy_features_exp_deg12 = 1.0104492672326732221;
inline constexpr double energy_spatial_exp_pair = 1.0104492672326732317;
inline constexpr double gauss_cond_min_eig_012 = 0.23640421479535966583;
inline constexpr double dirichlet2_grid_witness_energy = 2.9846536251347143757e-40;
inline constexpr double fejer1_grid_witness_energy = 1.6071211827648462023e-40;
inline constexpr double bl_two_diracs_t0p5 = 0.4;
inline constexpr double bl_two_diracs_t1 = 0.66666666666666666667;
inline constexpr double bl_two_diracs_t2 = 1.0;
inline constexpr double bl_two_diracs_t10 = 1.6666666666666666667;
inline constexpr double bl_three_atom_pair = 0.34285714285714286031;
inline constexpr double shrink_gamma_row1 = 0.19563109335462475524;
inline constexpr double shrink_gamma_row2 = 0.052744500562708314797;
inline constexpr double shrink_gamma_row3 = 0.013443984442307894615;
inline constexpr double moving_gamma_t0p5 = 0.4847743751796387951;
inline constexpr double moving_gamma_t0p25 = 0.24805953125673650741;
inline constexpr double quad_sin_0_pi = 2.0;
inline constexpr double quad_gauss_pm5 = 2.5066268375731304228;
inline constexpr double quad_gauss_pm5_closed = 2.5066268375731304228;
inline constexpr double geometric_half_from_1 = 1.0;
inline constexpr double spd5_min_eig = 0.056818177557069743125;

// modulated sinc-squared (alpha = 0.75, omega0 = 3): transform by quadrature
inline constexpr std::array<double, 20> density_ft_omegas = {-5.0, -4.45, -3.9, -3.35, -2.8, -2.25, -1.7, -1.15, -0.6, -0.05, 0.5, 1.05, 1.6, 2.15, 2.7, 3.25, 3.8, 4.35, 4.9, 5.45};
inline constexpr std::array<double, 20> density_ft_values = {-4.304788882405838e-42, 0.64795348480289486, 1.2959069696057897, 1.9438604544086846, 2.1205750411731104, 1.4726215563702156, 0.82466807156732073, 0.17671458676442587, 3.1389085600875902e-43, -1.3900880766102185e-42, 1.1658803223182478e-42, 0.058904862254808623, 0.70685834705770348, 1.3548118318605983, 2.0027653166634932, 2.0616701789183018, 1.413716694115407, 0.7657632093125121, 0.11780972450961725, -1.524612729185401e-42};
// frequencies in -12..12 where the Dirichlet grid witness has nonzero coefficients
inline constexpr std::array<long, 6> dirichlet2_grid_support = {-11, -5, -3, 3, 5, 11};
// random SPD matrix B B^T + 0.05 I, row-major
inline constexpr std::array<double, 25> spd5_matrix = {1.5094995254830155, -0.5458095745604427, -0.664189445831185, 0.6116393350669128, 0.3142067589502913, -0.5458095745604427, 2.357082819835626, -0.23664889403733438, -0.4421142099727713, -0.09073622014708305, -0.664189445831185, -0.23664889403733438, 0.6540706085980407, -0.7862174792156843, 0.5068517166001886, 0.6116393350669128, -0.4421142099727713, -0.7862174792156843, 2.4021731465933995, -1.733655445080817, 0.3142067589502913, -0.09073622014708305, 0.5068517166001886, -1.733655445080817, 2.5810074295492895};
// bounded-Lipschitz three-atom pair
inline constexpr std::array<double, 3> bl_p_points = {0.0, 1.0, 2.5};
inline constexpr std::array<double, 3> bl_p_weights = {0.2, 0.5, 0.3};
inline constexpr std::array<double, 3> bl_q_points = {0.5, 1.0, 4.0};
inline constexpr std::array<double, 3> bl_q_weights = {0.4, 0.4, 0.2};

}  // namespace fixtures
