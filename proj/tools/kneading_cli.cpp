// Command-line surface for the kneading-entropy library: certified entropy
// of external angles, parameter scans, survivor-set dimension, Holder
// exponent probes and the Feigenbaum ladder.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "kneading/entropy.hpp"
#include "kneading/holder.hpp"
#include "kneading/opendyn.hpp"
#include "kneading/realset.hpp"
#include "kneading/scan.hpp"

using json = nlohmann::json;
using namespace kneading;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCertification = 3;
constexpr int kExitCap = 4;

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

json entropy_record(const BinaryAngle& theta, const EntropyResult& e) {
    json j;
    j["angle"] = theta.fraction_string();
    j["binary"] = theta.to_string();
    switch (e.certificate) {
        case Certificate::Root:
            j["certificate"] = "root";
            j["r_lo"] = rat_str(e.r_lo);
            j["r_hi"] = rat_str(e.r_hi);
            break;
        case Certificate::NoRoot:
            j["certificate"] = "no_root";
            break;
        case Certificate::Interval:
            j["certificate"] = "interval";
            j["widen"] = e.widen;
            j["depth_used"] = e.depth_used;
            break;
    }
    j["entropy_lo"] = e.entropy.lo;
    j["entropy_hi"] = e.entropy.hi;
    j["growth_lo"] = e.growth_rate.lo;
    j["growth_hi"] = e.growth_rate.hi;
    j["derivative_lb"] = e.derivative_lb;
    return j;
}

void print_human_entropy(const BinaryAngle& theta, const EntropyResult& e) {
    std::printf("angle   %s = %s\n", theta.fraction_string().c_str(), theta.to_string().c_str());
    if (e.certificate == Certificate::NoRoot) {
        std::printf("h       0 (no root: kneading polynomial positive on (0,1))\n");
        return;
    }
    std::printf("h       [%.17g, %.17g]\n", e.entropy.lo, e.entropy.hi);
    std::printf("r       [%s, %s]\n", rat_str(e.r_lo).c_str(), rat_str(e.r_hi).c_str());
    std::printf("s=e^h   [%.17g, %.17g]\n", e.growth_rate.lo, e.growth_rate.hi);
    if (e.derivative_certified) std::printf("|P'(r)| >= %.6g\n", e.derivative_lb);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological entropy of real unimodal maps from the kneading angle"};
    app.set_config("--config", "", "Read options from a config file (flags win)");
    int prec_bits = 0;
    app.add_option("--prec", prec_bits, "Mantissa bits for certified log conversions")
        ->envname("KNEADING_PREC_BITS");

    std::string angle_str;
    double tol = 1e-12;
    bool as_json = false;

    auto* c_entropy = app.add_subcommand("entropy", "Certified entropy h(theta)");
    c_entropy->add_option("angle", angle_str, "Angle: p/q or .bits(period)")->required();
    c_entropy->add_option("--tol", tol, "Enclosure width bound");
    c_entropy->add_flag("--json", as_json, "Emit a JSON record");

    auto* c_member = app.add_subcommand("member", "Membership of theta in the real set R");
    c_member->add_option("angle", angle_str)->required();
    c_member->add_flag("--json", as_json);

    auto* c_pd = app.add_subcommand("pd", "Period doubling of a purely periodic member");
    c_pd->add_option("angle", angle_str)->required();
    c_pd->add_flag("--json", as_json);

    auto* c_tip = app.add_subcommand("tip", "Tip of the small copy rooted at theta");
    c_tip->add_option("angle", angle_str)->required();
    c_tip->add_flag("--json", as_json);

    auto* c_dim = app.add_subcommand("dimension", "Hausdorff dimension of the survivor set");
    c_dim->add_option("angle", angle_str)->required();
    double dim_tol = 1e-10;
    bool dump_matrix = false;
    c_dim->add_option("--tol", dim_tol, "Dimension interval width bound");
    c_dim->add_flag("--dump-matrix", dump_matrix, "Print the Markov partition and matrix");
    c_dim->add_flag("--json", as_json);

    auto* c_holder = app.add_subcommand("holder", "Local Holder exponent of the entropy");
    c_holder->add_option("angle", angle_str)->required();
    HolderOptions hopt;
    std::string side_str = "both";
    std::string csv_path;
    c_holder->add_option("--jmin", hopt.j_min, "Smallest dyadic scale 2^-j");
    c_holder->add_option("--jmax", hopt.j_max, "Largest dyadic scale 2^-j");
    c_holder->add_option("--samples", hopt.samples_per_scale, "Samples per scale");
    c_holder->add_option("--side", side_str, "left | right | both");
    c_holder->add_option("--csv", csv_path, "Write per-sample CSV to this path");
    c_holder->add_flag("--json", as_json);

    auto* c_feig = app.add_subcommand("feigenbaum", "Thue-Morse ladder toward theta_star");
    unsigned nmax = 6;
    double feig_tol = 1e-11;
    c_feig->add_option("--nmax", nmax, "Highest ladder level");
    c_feig->add_option("--tol", feig_tol, "Entropy certification tolerance");
    c_feig->add_flag("--json", as_json);

    auto* c_scan = app.add_subcommand("scan", "Entropy/dimension over an angle grid");
    std::string from_str = "0", to_str = "1/2", mode_str = "entropy", format = "csv";
    std::string angles_str, out_path;
    ScanConfig scfg;
    c_scan->add_option("--from", from_str, "Left end of the range");
    c_scan->add_option("--to", to_str, "Right end of the range");
    c_scan->add_option("--depth", scfg.depth, "Dyadic grid depth d (points k/2^d)");
    c_scan->add_option("--angles", angles_str, "Comma-separated explicit angle list");
    c_scan->add_option("--tol", scfg.tol, "Certification tolerance per row");
    c_scan->add_option("--mode", mode_str, "entropy | dimension | both");
    c_scan->add_option("--format", format, "csv | json");
    c_scan->add_option("--jobs", scfg.workers, "Worker count (0 = hardware)");
    c_scan->add_option("--out", out_path, "Write to a file instead of stdout");

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (prec_bits > 0) set_default_precision_bits(prec_bits);

    try {
        if (c_entropy->parsed()) {
            BinaryAngle theta = BinaryAngle::parse(angle_str);
            if (theta.value() > Rat(1, 2))
                throw std::invalid_argument("entropy: angle must lie in [0, 1/2]");
            EntropyOptions eo;
            eo.tol = Rat(tol);
            EntropyResult e = entropy(theta, eo);
            if (as_json)
                std::cout << entropy_record(theta, e).dump(2) << "\n";
            else
                print_human_entropy(theta, e);
            if (e.has_root() && !e.derivative_certified) {
                std::cerr << "WARNING: |P'(r)| could not be bounded away from 0 -- suspected "
                             "multiple root, contradicts the simplicity theorem\n";
                return kExitCertification;
            }
            return kExitOk;
        }
        if (c_member->parsed()) {
            BinaryAngle theta = BinaryAngle::parse(angle_str);
            AngleClass cls = is_real_angle(theta);
            json j;
            j["angle"] = theta.fraction_string();
            j["member"] = cls.member;
            j["purely_periodic"] = cls.purely_periodic;
            j["primitive"] = cls.purely_periodic && cls.member ? json(cls.primitive) : json();
            j["witness_k"] = cls.witness_k ? json(*cls.witness_k) : json();
            std::cout << j.dump(as_json ? 2 : -1) << "\n";
            return kExitOk;
        }
        if (c_pd->parsed() || c_tip->parsed()) {
            BinaryAngle theta = BinaryAngle::parse(angle_str);
            BinaryAngle r = c_pd->parsed() ? period_doubling(theta) : small_copy_tip(theta);
            if (as_json) {
                json j;
                j["angle"] = theta.fraction_string();
                j["result"] = r.fraction_string();
                j["binary"] = r.to_string();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << r.fraction_string() << " = " << r.to_string() << "\n";
            }
            return kExitOk;
        }
        if (c_dim->parsed()) {
            BinaryAngle theta = BinaryAngle::parse(angle_str);
            AutomatonOptions aopt;
            aopt.lambda_tol = Rat(dim_tol) / 2;
            SurvivorAutomaton a = build_automaton(theta, aopt);
            DoubleInterval d = dimension(a);
            if (dump_matrix) std::cout << dump_automaton(a);
            json j;
            j["theta"] = theta.fraction_string();
            j["states"] = a.state_count();
            j["lambda_lo"] = rat_str(a.lambda_lo);
            j["lambda_hi"] = rat_str(a.lambda_hi);
            j["dimension_lo"] = d.lo;
            j["dimension_hi"] = d.hi;
            std::cout << j.dump(as_json ? 2 : -1) << "\n";
            return kExitOk;
        }
        if (c_holder->parsed()) {
            BinaryAngle theta = BinaryAngle::parse(angle_str);
            if (side_str == "left")
                hopt.side = Side::Left;
            else if (side_str == "right")
                hopt.side = Side::Right;
            else if (side_str == "both")
                hopt.side = Side::Both;
            else
                throw std::invalid_argument("holder: --side must be left|right|both");
            HolderEstimate est = local_exponent(theta, hopt);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << "scale,delta_theta,delta_h,used_flag\n";
                for (const auto& s : est.samples)
                    csv << s.scale_j << ',' << rat_str(s.dtheta) << ','
                        << (s.used ? 0.5 * (s.dh.lo + s.dh.hi) : 0.0) << ',' << (s.used ? 1 : 0)
                        << "\n";
            }
            EntropyResult e = entropy(theta, 1e-13);
            json j;
            j["theta"] = theta.fraction_string();
            j["plateau"] = est.plateau;
            if (!est.plateau) {
                j["exponent"] = est.exponent;
                j["residual"] = est.residual;
            }
            j["predicted"] = e.entropy.mid() / std::log(2.0);
            j["window"] = {est.j_min, est.j_max};
            j["side"] = side_str;
            j["used_pairs"] = est.used_pairs;
            std::cout << j.dump(as_json ? 2 : -1) << "\n";
            return kExitOk;
        }
        if (c_feig->parsed()) {
            auto rows = feigenbaum_ladder(nmax, feig_tol);
            json arr = json::array();
            for (const auto& r : rows) {
                json j;
                j["n"] = r.n;
                j["eta_n"] = r.eta_n.fraction_string();
                j["theta_n"] = r.theta_n.fraction_string();
                j["h_lo"] = r.h.lo;
                j["h_hi"] = r.h.hi;
                j["h_times_2n"] = r.h.mid() * std::pow(2.0, r.n);
                j["gap_lo"] = rat_str(r.gap_lo);
                j["gap_hi"] = rat_str(r.gap_hi);
                j["eta_gap_lo"] = rat_str(r.eta_gap_lo);
                j["eta_gap_hi"] = rat_str(r.eta_gap_hi);
                j["modulus_product"] = r.modulus_product;
                arr.push_back(std::move(j));
            }
            std::cout << arr.dump(as_json ? 2 : -1) << "\n";
            return kExitOk;
        }
        if (c_scan->parsed()) {
            scfg.from = BinaryAngle::parse(from_str).value();
            scfg.to = BinaryAngle::parse(to_str).value();
            if (mode_str == "entropy")
                scfg.mode = ScanMode::Entropy;
            else if (mode_str == "dimension")
                scfg.mode = ScanMode::Dimension;
            else if (mode_str == "both")
                scfg.mode = ScanMode::Both;
            else
                throw std::invalid_argument("scan: --mode must be entropy|dimension|both");
            if (!angles_str.empty()) {
                std::stringstream ss(angles_str);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) scfg.explicit_angles.push_back(BinaryAngle::parse(tok));
            }
            validate(scfg);
            auto rows = run_scan(scfg);

            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw std::invalid_argument("scan: cannot open output file");
                os = &file;
            }
            size_t failures = 0;
            if (format == "csv") {
                *os << "theta_num,theta_den";
                if (scfg.mode != ScanMode::Dimension) *os << ",h_lo,h_hi";
                if (scfg.mode != ScanMode::Entropy) *os << ",dim_lo,dim_hi";
                *os << "\n";
                os->precision(17);
                for (const auto& row : rows) {
                    if (!row.ok()) {
                        ++failures;
                        std::cerr << "row " << row.theta.fraction_string() << ": " << row.error
                                  << "\n";
                        continue;
                    }
                    *os << row.theta.value().get_num() << ',' << row.theta.value().get_den();
                    if (row.h) *os << ',' << row.h->lo << ',' << row.h->hi;
                    if (row.dim) *os << ',' << row.dim->lo << ',' << row.dim->hi;
                    *os << "\n";
                }
            } else if (format == "json") {
                json arr = json::array();
                for (const auto& row : rows) {
                    json j;
                    j["theta"] = row.theta.fraction_string();
                    if (!row.ok()) {
                        ++failures;
                        j["error"] = row.error;
                    } else {
                        if (row.h) {
                            j["h_lo"] = row.h->lo;
                            j["h_hi"] = row.h->hi;
                        }
                        if (row.dim) {
                            j["dim_lo"] = row.dim->lo;
                            j["dim_hi"] = row.dim->hi;
                        }
                    }
                    arr.push_back(std::move(j));
                }
                *os << arr.dump(2) << "\n";
            } else {
                throw std::invalid_argument("scan: --format must be csv|json");
            }
            return failures ? kExitCertification : kExitOk;
        }
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const CertificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCertification;
    }
    return kExitUsage;
}
