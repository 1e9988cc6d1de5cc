#ifndef VIBCOOL_UNITS_HPP
#define VIBCOOL_UNITS_HPP

// All internal quantities are in Hartree atomic units (hbar = e = m_e = 1).
// These constants convert between atomic units and the lab units accepted
// by config files and used in CSV output. CODATA 2018 values.

namespace vibcool::units {

inline constexpr double fine_structure = 7.2973525693e-3;   // alpha
inline constexpr double hartree_to_cm1 = 219474.6313632;    // E_h -> cm^-1
inline constexpr double au_time_to_fs = 2.4188843265857e-2; // t_au -> fs
inline constexpr double bohr_to_angstrom = 0.529177210903;  // a_0 -> Angstrom
inline constexpr double debye_to_au = 0.3934302694;         // D -> e*a_0

// 0.5 * eps0 * c * E_au^2 in W/m^2: intensity of a field of 1 a.u. amplitude.
inline constexpr double au_field_sq_to_w_m2 = 3.50944758e20;
inline constexpr double au_time_to_s = au_time_to_fs * 1e-15;

inline constexpr double cm1_to_hartree = 1.0 / hartree_to_cm1;
inline constexpr double fs_to_au_time = 1.0 / au_time_to_fs;
inline constexpr double angstrom_to_bohr = 1.0 / bohr_to_angstrom;

}  // namespace vibcool::units

#endif
