#pragma once

namespace refsa {

// Device-model parameter record for the simulated memristive stack. The
// behavioral model does not integrate these; they are retained as the
// configuration provenance for the device whose calibration the state table
// encodes, and as the quantities whose spread the variation profile maps
// onto read-current factors.
struct PhysicalModelParams {
    double cell_length_nm = 3.0;              // l_cell
    double disc_length_nm = 4.0;              // l_det
    double disc_radius_nm = 20.0;             // r_det
    double plug_vacancy_per_m3 = 20e26;       // N_plug
    double lattice_constant_nm = 0.25;        // a
    double electron_mobility_m2_per_vs = 1e-6; // mu_n
    double permittivity_rel = 17.0;           // eps, in units of eps0
    double disc_vacancy_min_per_m3 = 0.008e26; // N_disc,min
    double barrier_permittivity_rel = 5.5;    // eps-phi-beta, in units of eps0
    double disc_vacancy_max_per_m3 = 20e26;   // N_disc,max
    double barrier_height_zero_bias_ev = 0.3; // e-phi-bn0
    double barrier_height_ev = 0.1;           // e-phi-bn
    double activation_energy_ev = 0.7;        // dW_A
    double area_factor_per_ohm = 0.00392;     // A
    double series_resistance_ohm = 650.0;     // R_series
    double disc_resistance_ohm = 719.244;     // R_0
    double thermal_line_resistance_kohm = 90.47; // R_th,line
    double thermal_resistance_ohm = 1.572e7;  // R_th0

    bool operator==(const PhysicalModelParams&) const = default;
};

} // namespace refsa
