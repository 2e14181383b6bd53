// Copyright 2026 The basket2vec Authors
// SPDX-License-Identifier: Apache-2.0

#include "b2v/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "b2v/errors.hpp"

namespace b2v {

namespace {

void put_u32(std::ostream& out, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<uint64_t>(v));
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_u64(in));
}

}  // namespace

void save_model(const EmbeddingModel& model, const Catalog& catalog,
                const std::string& path) {
  if (catalog.size() != model.catalog_size()) {
    throw data_error("catalog size does not match model");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw data_error("cannot write snapshot: " + path);

  out.write(kSnapshotMagic, sizeof(kSnapshotMagic));
  put_u32(out, kSnapshotVersion);
  const char role = model.role() == ModelRole::generator ? 0 : 1;
  const char reserved[3] = {0, 0, 0};
  out.write(&role, 1);
  out.write(reserved, 3);
  put_u64(out, model.catalog_size());
  put_u64(out, model.dim());
  for (double v : model.input()) put_f64(out, v);
  for (double v : model.output()) put_f64(out, v);
  for (const std::string& item : catalog.items()) {
    put_u32(out, static_cast<uint32_t>(item.size()));
    out.write(item.data(), static_cast<std::streamsize>(item.size()));
  }
  if (!out) throw data_error("short write saving snapshot: " + path);
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open snapshot: " + path);

  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kSnapshotMagic, 8) != 0) {
    throw data_error("not a model snapshot: " + path);
  }
  const uint32_t version = get_u32(in);
  if (version != kSnapshotVersion) {
    throw data_error("unsupported snapshot version " +
                     std::to_string(version) + " in " + path);
  }
  char role_and_pad[4];
  in.read(role_and_pad, 4);
  if (role_and_pad[0] != 0 && role_and_pad[0] != 1) {
    throw data_error("invalid role tag in snapshot: " + path);
  }
  const ModelRole role =
      role_and_pad[0] == 0 ? ModelRole::generator : ModelRole::discriminator;
  const uint64_t catalog_size = get_u64(in);
  const uint64_t dim = get_u64(in);
  if (!in || catalog_size < 2 || dim < 1 || catalog_size > (1ull << 32) ||
      dim > (1ull << 20)) {
    throw data_error("implausible snapshot header in " + path);
  }

  EmbeddingModel model(catalog_size, dim, role);
  for (double& v : model.input()) v = get_f64(in);
  for (double& v : model.output()) v = get_f64(in);

  auto catalog = std::make_shared<Catalog>();
  std::string item;
  for (uint64_t i = 0; i < catalog_size; ++i) {
    const uint32_t len = get_u32(in);
    if (!in || len > (1u << 20)) {
      throw data_error("truncated snapshot catalog in " + path);
    }
    item.resize(len);
    in.read(item.data(), len);
    catalog->intern(item);
  }
  if (!in) throw data_error("truncated snapshot: " + path);
  if (catalog->size() != catalog_size) {
    throw data_error("duplicate items in snapshot catalog: " + path);
  }
  return {std::move(model), std::move(catalog)};
}

}  // namespace b2v
