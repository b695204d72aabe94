// Emits the five grid certificates behind the eel construction as JSON lines.
// An optional argument overrides the grid resolution.

#include <cstdio>
#include <cstdlib>

#include "eelkit/eelkit.hpp"

int main(int argc, char** argv) {
  const std::size_t grid = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 10000;
  const eelkit::EelParams p = eelkit::eel_params();
  for (eelkit::CertLemma l :
       {eelkit::CertLemma::helix_self_expanded, eelkit::CertLemma::z_axis,
        eelkit::CertLemma::small_cylinder, eelkit::CertLemma::radial_segment,
        eelkit::CertLemma::big_cylinder})
    std::printf("%s\n", eelkit::to_json(eelkit::certify_lemma(l, p, grid)).dump().c_str());
  return 0;
}
