#ifndef RADMACH_VERIFY_HPP
#define RADMACH_VERIFY_HPP

#include <string>
#include <vector>

namespace radmach {
namespace verify {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    int threads = 0;
    bool quick = false; // reduced c_max for smoke runs (not used by acceptance)
};

Report partitions(const VerifyOptions& opt = {});
Report jmonster(const VerifyOptions& opt = {});
Report eisenstein(const VerifyOptions& opt = {});
Report mathieu(const VerifyOptions& opt = {});
Report dualities(const VerifyOptions& opt = {});
Report lipschitz(const VerifyOptions& opt = {});
Report quasimod(const VerifyOptions& opt = {});
Report completion(const VerifyOptions& opt = {});
Report hauptmodul2(const VerifyOptions& opt = {});
Report properties(const VerifyOptions& opt = {});

std::vector<std::string> suite_names();
Report run_suite(const std::string& name, const VerifyOptions& opt = {});

void print_report(const Report& r, std::ostream& os);

} // namespace verify
} // namespace radmach

#endif
