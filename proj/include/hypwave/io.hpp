#pragma once

#include <string>

#include "hypwave/atoms.hpp"
#include "hypwave/kernel.hpp"
#include "hypwave/model.hpp"
#include "hypwave/profile.hpp"
#include "hypwave/space.hpp"
#include "hypwave/verify.hpp"

namespace hypwave {

inline constexpr const char* kSchemaVersion = "hypwave-1";

// CSV: header "# schema=hypwave-1 kind=profile", then "s,re,im" rows
void write_profile_csv(const std::string& path, const RadialProfile& f);
RadialProfile read_profile_csv(const std::string& path);

void write_spectrum_csv(const std::string& path, const Spectrum& g);
Spectrum read_spectrum_csv(const std::string& path);

// "s,K,Kprime,reliable"
void write_kernel_csv(const std::string& path, const WaveKernel& k);

// "coord0,...,coordn,index"
void write_net_csv(const std::string& path, const Net& net);

// phi table: "lambda,s,value,derivative,method"
void write_spherical_csv(const std::string& path, const SpaceParams& p,
                         const std::vector<double>& lams, const std::vector<double>& ss);

std::string bound_report_json(const BoundReport& rep);
std::string growth_report_json(const GrowthReport& rep);
std::string lq_report_json(const LqReport& rep);
std::string decomposition_json(const AtomicDecomposition& dec);

// {"m1": int, "m2": int}
SpaceParams read_space_json(const std::string& path);
SpaceParams parse_space(const std::string& text);  // "m1=2,m2=0"

void write_text(const std::string& path, const std::string& text);

}  // namespace hypwave
