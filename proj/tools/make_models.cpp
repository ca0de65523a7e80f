// Regenerates the bundled model gallery under models/.

#include <fstream>
#include <iostream>

#include "orbindex/model_io.hpp"

using namespace orbindex;

namespace {

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    std::cout << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "models";
    write(dir + "/empty.model", "{\n  \"geometric\": false,\n  \"sectors\": []\n}\n");
    for (long n = 2; n <= 8; ++n)
        for (long j = 0; j < n; ++j)
            write(dir + "/pt_z" + std::to_string(n) + "_irrep" + std::to_string(j) + ".model",
                  model_to_json(models::point_quotient(n, j)));
    // regular representation of Z3: all irreducibles together
    {
        OrbifoldModel reg = models::point_quotient(3, 0);
        OrbifoldModel chi1 = models::point_quotient(3, 1);
        OrbifoldModel chi2 = models::point_quotient(3, 2);
        for (size_t i = 0; i < reg.sectors.size(); ++i) {
            reg.sectors[i].bundle_e.push_back(chi1.sectors[i].bundle_e[0]);
            reg.sectors[i].bundle_e.push_back(chi2.sectors[i].bundle_e[0]);
        }
        auto& lf = *reg.lefschetz;
        lf.identity_term = Rational(3);
        for (size_t e = 0; e < lf.elements.size(); ++e) {
            long j = static_cast<long>(e) + 1;
            lf.elements[e].fixed_points = {
                {Cyclotomic(1), Cyclotomic::root(3, 0) + Cyclotomic::root(3, j) +
                                    Cyclotomic::root(3, 2 * j)}};
        }
        write(dir + "/pt_z3_regular.model", model_to_json(reg));
    }
    for (long m = 2; m <= 4; ++m)
        write(dir + "/football_z" + std::to_string(m) + ".model",
              model_to_json(models::football(m)));
    write(dir + "/t2_z2.model", model_to_json(models::torus_z2()));
    write(dir + "/football_z2_deformed.model",
          model_to_json(models::football_deformed(2, rat(1))));
    return 0;
}
