#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "dlab/report.hpp"

using namespace dlab;

TEST(Fmt, IntegralValuesKeepPoint) {
  EXPECT_EQ(fmt(2.0), "2.0");
  EXPECT_EQ(fmt(-3.0), "-3.0");
  EXPECT_EQ(fmt(0.0), "0.0");
  EXPECT_EQ(fmt(0.5), "0.5");
  EXPECT_EQ(fmt(1e300), "1e+300");
}

TEST(Fmt, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 10.928203230275509, 6.02e23, -1e-310, std::sqrt(2.0)})
    EXPECT_EQ(std::strtod(fmt(v).c_str(), nullptr), v);
}

TEST(Csv, ColumnCountIsEnforced) {
  std::ostringstream os;
  CsvWriter w(os, {"a", "b"});
  w << 1.0 << std::string("x");
  w.end_row();
  EXPECT_EQ(os.str(), "a,b\n1.0,x\n");
  w << 1.0;
  EXPECT_ANY_THROW(w.end_row());
}

TEST(Csv, FixedHeaders) {
  std::ostringstream a, d, s;
  write_annulus_csv(a, {AnnulusScanRow{}}, 7);
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "k,sup_ratio,sup_e0,sup_ehalf,arg_c,arg_e,seed");
  write_diag_csv(d, {Diagnostics{}});
  EXPECT_EQ(d.str(), "t,mass,energy,h1,linf\n0.0,0.0,0.0,0.0,0.0\n");
  ScanRecord r;
  r.m = 3;
  r.n = 1;
  write_scan_csv(s, {r});
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "geometry,m,n,lambda,mu,trials,K,seed,converged");
  EXPECT_NE(s.str().find("R3xT1"), std::string::npos);
}

TEST(Json, FitIsParseable) {
  FitResult f;
  f.alpha = 0.5;
  f.C = 2.0;
  std::ostringstream os;
  write_fit_json(os, f);
  EXPECT_NE(os.str().find("\"alpha\":0.5"), std::string::npos);
  EXPECT_NE(os.str().find("\"alpha_only\":false"), std::string::npos);
}
