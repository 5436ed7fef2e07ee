#include "cuspmag/pipeline.hpp"

namespace cuspmag {

const std::vector<Example>& examples() {
  static const std::vector<Example> list{
      {"trap_p1", "one circle end, p = 1, flux 1/2: trapping, discrete spectrum",
       R"(# trapping: non-integral flux on the only end
n = 2
p = 1
x0 = 1/10

[end.A]
length = 2pi
flux = [1/2]
)"},
      {"open_p1", "one circle end, p = 1, zero flux: one zero mode, continuum above 1/4",
       R"(n = 2
p = 1
x0 = 1/10

[end.A]
length = 2pi
flux = [0]
)"},
      {"two_cusps", "two ends with non-integral fluxes",
       R"(n = 2
p = 1
x0 = 1/10

[end.A]
length = 2pi
flux = [1/3]

[end.B]
length = 4pi
flux = [1/2]
)"},
      {"torus_end", "three-dimensional end with a flat torus cross-section",
       R"(n = 3
p = 1/2
x0 = 1/4

[end.T]
gram = [[4pi^2, 0], [0, 4pi^2]]
flux = [1/2, 0]
)"},
      {"sub_critical", "p = 1/3, eigenvalue growth lambda^(3/2)",
       R"(n = 2
p = 1/3
x0 = 1/10

[end.A]
length = 2pi
flux = [1/2]
)"},
      {"sampled_phi0", "non-constant boundary potential; counting is refused until it is normalized",
       R"(n = 2
p = 1
x0 = 1/10

[end.A]
length = 2pi
flux = [1/2]
phi0 = [0, 1/4, 1/2, 1/4]
)"},
      {"coupling", "single circle with flux 1/2 for scan-coupling",
       R"(n = 2
p = 1
x0 = 1/10

[end.A]
length = 2pi
flux = [1/2]

[numerics]
g_grid = [0, 1/2, 1, 3/2, 2, 5/2, 3, 7/2, 4]
)"},
      {"horn", "p = 2, incomplete metric horn",
       R"(n = 2
p = 2
x0 = 1/10

[end.A]
length = 2pi
flux = [1/2]
)"},
      {"field_compact", "compactly supported field with non-integral classes on both ends",
       R"([field]
h1_zero = true
vanishes_on = [A, B]
class.A = [1/2]
class.B = [1/3]
)"},
      {"surface_one_cusp", "one-cusp orientable surface, b = 1",
       R"([surface]
cusps = 1
orientable = true
b_class = 1
)"},
      {"surface_half", "one-cusp orientable surface, b = 1/2",
       R"([surface]
cusps = 1
orientable = true
b_class = 1/2
)"},
      {"surface_two_cusps", "two-cusp surface",
       R"([surface]
cusps = 2
orientable = true
b_class = 1
)"},
      {"surface_nonorientable", "one-cusp non-orientable surface",
       R"([surface]
cusps = 1
orientable = false
b_class = 1
)"},
      {"three_manifold", "two torus cusps, half-rank Lagrangian image",
       R"([three_manifold]
dimension = 3
orientable = true
boundary_rank = [2, 2]
l_basis = [[1, 0], [0, 0], [0, 1], [0, 0]]
b = [1/2, 1/3]
)"},
  };
  return list;
}

}  // namespace cuspmag
