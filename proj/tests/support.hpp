#pragma once

#include "cuspmag/config.hpp"

#include <string>

// Small config builders shared by the unit tests.
inline cuspmag::Config circle_config(const std::string& n, const std::string& p, const std::string& flux,
                                     const std::string& x0 = "1/10", const std::string& extra = "") {
  return cuspmag::parse_config("n = " + n + "\np = " + p + "\nx0 = " + x0 + "\n\n[end.A]\nlength = 2pi\nflux = [" +
                               flux + "]\n" + extra);
}
