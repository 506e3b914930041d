// SPDX-License-Identifier: Apache-2.0
#include "licensechain/service/demo.hpp"

#include "licensechain/codescan/zip_archive.hpp"

namespace licensechain::service::demo {

namespace {

constexpr const char* kVectorC = R"(#include "vector.h"
#include <math.h>

double vec_dot(const vec2 *a, const vec2 *b) {
    return a->x * b->x + a->y * b->y;
}

double vec_length(const vec2 *v) {
    return sqrt(vec_dot(v, v));
}

void vec_scale(vec2 *v, double k) {
    v->x *= k;
    v->y *= k;
}

void vec_add(vec2 *out, const vec2 *a, const vec2 *b) {
    out->x = a->x + b->x;
    out->y = a->y + b->y;
}
)";

constexpr const char* kPolygonC = R"(#include "polygon.h"

double polygon_area(const vec2 *pts, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += pts[i].x * pts[(i + 1) % n].y - pts[(i + 1) % n].x * pts[i].y;
    return acc / 2.0;
}

int polygon_is_convex(const vec2 *pts, int n) {
    int sign = 0;
    for (int i = 0; i < n; ++i) sign |= cross_sign(&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
    return sign != 3;
}
)";

constexpr const char* kVectorH = R"(typedef struct vec2 { double x, y; } vec2;
double vec_dot(const vec2 *a, const vec2 *b);
double vec_length(const vec2 *v);
)";

constexpr const char* kPolygonModified = R"(#include "polygon.h"

double polygon_area(const vec2 *pts, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += pts[i].x * pts[(i + 1) % n].y - pts[(i + 1) % n].x * pts[i].y;
    return fabs(acc) / 2.0;
}

int polygon_is_convex(const vec2 *pts, int n) {
    int sign = 0;
    for (int i = 0; i < n; ++i) sign |= cross_sign(&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
    return sign != 3;
}
)";

constexpr const char* kRenderC = R"(#include "vector.h"
#include <stdio.h>

void render_point(const vec2 *v) {
    printf("(%.3f, %.3f)\n", v->x, v->y);
}
)";

}  // namespace

std::string wallets_json() {
  return "{\n"
         "  \"alice\": \"0x1111111111111111111111111111111111111111\",\n"
         "  \"bob\": \"0x2222222222222222222222222222222222222222\",\n"
         "  \"carol\": \"0x3333333333333333333333333333333333333333\"\n"
         "}\n";
}

registry::WalletDirectory wallets() { return registry::WalletDirectory::parse(wallets_json(), "<demo>"); }

std::vector<codescan::SourceFile> original_sources() {
  return {
      {"include/vector.h", kVectorH},
      {"src/polygon.c", kPolygonC},
      {"src/vector.c", kVectorC},
  };
}

std::string original_archive() {
  std::vector<codescan::ZipEntry> entries;
  for (const auto& f : original_sources()) entries.push_back({f.path, f.content});
  return codescan::write_zip(entries);
}

std::string derivative_archive() {
  return codescan::write_zip({
      {"include/vector.h", kVectorH},
      {"src/polygon.c", kPolygonModified},
      {"src/render.c", kRenderC},
      {"src/vector.c", kVectorC},
  });
}

contracts::ProjectId seed(Platform& platform) {
  for (const auto& r : platform.registry().list_projects()) {
    if (r.name == kOriginName && r.uploader == kAuthor) return r.project_id;
  }
  UploadRequest req;
  req.username = kAuthor;
  req.archive = original_archive();
  req.name = kOriginName;
  req.description = "Small 2D vector and polygon routines";
  req.license = licensing::LicenseId::lgpl_2_1;
  auto verdict = platform.upload(req);
  return verdict.project_id.value();
}

ScenarioReport run_scenario(Platform& platform) {
  ScenarioReport report;
  report.origin = seed(platform);
  report.download_block = platform.download(kDownloader, report.origin).block_index;

  UploadRequest req;
  req.username = kDownloader;
  req.archive = derivative_archive();
  req.name = "geometry-render";
  req.description = "libgeometry with point rendering";
  req.license = licensing::LicenseId::apache_2_0;
  report.rejected = platform.upload(req);
  req.license = licensing::LicenseId::lgpl_2_1;
  report.accepted = platform.upload(req);
  return report;
}

}  // namespace licensechain::service::demo
