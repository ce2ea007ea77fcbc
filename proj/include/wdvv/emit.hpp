#pragma once

#include <iosfwd>
#include <vector>

#include "wdvv/fit.hpp"
#include "wdvv/geometry.hpp"
#include "wdvv/series.hpp"

namespace wdvv {

/// CSV sweep rows: X,phi0,phi1,phi2,phi3,n_terms,digits.
void write_phi_csv(std::ostream& out, const std::vector<PhiValues>& rows,
                   unsigned digits);
void write_phi_json(std::ostream& out, const std::vector<PhiValues>& rows,
                    unsigned digits);

/// {"n0":..., "n":..., "a":"<decimal>", "b":"<decimal>", "rms":"<decimal>",
///  "low_confidence":...} with decimal-string numerics.
void write_fit_json(std::ostream& out, const std::vector<FitResult>& fits,
                    unsigned digits);
void write_fit_csv(std::ostream& out, const std::vector<FitResult>& fits,
                   unsigned digits);

/// Scan rows: delta,X,separation,u1_re,u1_im,u2_re,u2_im,u3_re,u3_im,j2,j3.
void write_scan_csv(std::ostream& out, const ScanResult& scan, unsigned digits);
void write_scan_json(std::ostream& out, const ScanResult& scan, unsigned digits);

}  // namespace wdvv
