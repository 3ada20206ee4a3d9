#include "kneading/scan.hpp"

#include <atomic>
#include <thread>

#include "kneading/opendyn.hpp"

namespace kneading {

void validate(const ScanConfig& cfg) {
    if (!(cfg.from < cfg.to)) throw std::invalid_argument("scan: requires from < to");
    if (cfg.from < 0 || cfg.to > Rat(1, 2))
        throw std::invalid_argument("scan: range must lie inside [0, 1/2]");
    if (cfg.depth > 40) throw std::invalid_argument("scan: grid depth capped at 40");
    if (!(cfg.tol > 0)) throw std::invalid_argument("scan: tol must be positive");
}

std::vector<ScanRow> run_scan(const ScanConfig& cfg) {
    validate(cfg);
    std::vector<BinaryAngle> grid;
    if (!cfg.explicit_angles.empty()) {
        grid = cfg.explicit_angles;
        std::sort(grid.begin(), grid.end());
    } else {
        // k/2^depth inside [from, to]
        Int scale = Int(1) << cfg.depth;
        Rat lo = cfg.from * Rat(scale), hi = cfg.to * Rat(scale);
        Int k_lo, k_hi;
        mpz_cdiv_q(k_lo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpz_fdiv_q(k_hi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        for (Int k = k_lo; k <= k_hi; ++k)
            grid.push_back(BinaryAngle::from_fraction(Rat(k, scale)));
    }

    std::vector<ScanRow> rows(grid.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= rows.size()) return;
            ScanRow& row = rows[i];
            row.theta = grid[i];
            try {
                if (cfg.mode != ScanMode::Dimension) {
                    EntropyOptions eo;
                    eo.tol = Rat(cfg.tol);
                    eo.certify_derivative = false;
                    row.h = entropy(grid[i], eo).entropy;
                }
                if (cfg.mode != ScanMode::Entropy) {
                    if (sgn(grid[i].value()) == 0)
                        row.dim = DoubleInterval{0.0, 0.0};  // hole (0,1): K = {0}
                    else
                        row.dim = dimension(grid[i], cfg.tol);
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    unsigned n = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, std::max<size_t>(rows.size(), 1));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace kneading
