#!/usr/bin/env python3
# Copyright 2026 The dpsynth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts the UCI Adult census files into a dpsynth schema + CSV.

Usage:
  prepare_adult.py --data adult.data --test adult.test --out data/adult
  prepare_adult.py --wheel responsibly-0.1.2-py3-none-any.whl --out data/adult

The second form reads both files out of a wheel that bundles them (the
`responsibly` package ships the original UCI files). Rows containing a
missing value ('?') are dropped, leaving 45222 records.
"""

import argparse
import csv
import json
import os
import zipfile

COLUMNS = [
    ("age", "integer", (17, 90)),
    ("workclass", "categorical", [
        "Private", "Self-emp-not-inc", "Self-emp-inc", "Federal-gov",
        "Local-gov", "State-gov", "Without-pay", "Never-worked"]),
    ("fnlwgt", "integer", (12285, 1490400)),
    ("education", "categorical", [
        "Bachelors", "Some-college", "11th", "HS-grad", "Prof-school",
        "Assoc-acdm", "Assoc-voc", "9th", "7th-8th", "12th", "Masters",
        "1st-4th", "10th", "Doctorate", "5th-6th", "Preschool"]),
    ("education_num", "integer", (1, 16)),
    ("marital_status", "categorical", [
        "Married-civ-spouse", "Divorced", "Never-married", "Separated",
        "Widowed", "Married-spouse-absent", "Married-AF-spouse"]),
    ("occupation", "categorical", [
        "Tech-support", "Craft-repair", "Other-service", "Sales",
        "Exec-managerial", "Prof-specialty", "Handlers-cleaners",
        "Machine-op-inspct", "Adm-clerical", "Farming-fishing",
        "Transport-moving", "Priv-house-serv", "Protective-serv",
        "Armed-Forces"]),
    ("relationship", "categorical", [
        "Wife", "Own-child", "Husband", "Not-in-family", "Other-relative",
        "Unmarried"]),
    ("race", "categorical", [
        "White", "Asian-Pac-Islander", "Amer-Indian-Eskimo", "Other",
        "Black"]),
    ("sex", "categorical", ["Female", "Male"]),
    ("capital_gain", "integer", (0, 99999)),
    ("capital_loss", "integer", (0, 4356)),
    ("hours_per_week", "integer", (1, 99)),
    ("native_country", "categorical", [
        "United-States", "Cambodia", "England", "Puerto-Rico", "Canada",
        "Germany", "Outlying-US(Guam-USVI-etc)", "India", "Japan", "Greece",
        "South", "China", "Cuba", "Iran", "Honduras", "Philippines", "Italy",
        "Poland", "Jamaica", "Vietnam", "Mexico", "Portugal", "Ireland",
        "France", "Dominican-Republic", "Laos", "Ecuador", "Taiwan", "Haiti",
        "Columbia", "Hungary", "Guatemala", "Nicaragua", "Scotland",
        "Thailand", "Yugoslavia", "El-Salvador", "Trinadad&Tobago", "Peru",
        "Hong", "Holand-Netherlands"]),
    ("income", "categorical", ["<=50K", ">50K"]),
]


def parse_lines(text):
  rows = []
  for line in text.splitlines():
    line = line.strip()
    if not line or line.startswith("|"):
      continue
    cells = [c.strip() for c in line.split(",")]
    if len(cells) != len(COLUMNS) or "?" in cells:
      continue
    cells[-1] = cells[-1].rstrip(".")
    rows.append(cells)
  return rows


def main():
  parser = argparse.ArgumentParser()
  parser.add_argument("--data")
  parser.add_argument("--test")
  parser.add_argument("--wheel")
  parser.add_argument("--out", required=True)
  args = parser.parse_args()

  if args.wheel:
    with zipfile.ZipFile(args.wheel) as z:
      texts = [z.read("responsibly/dataset/adult/adult.data").decode(),
               z.read("responsibly/dataset/adult/adult.test").decode()]
  else:
    texts = [open(args.data).read(), open(args.test).read()]

  rows = []
  for text in texts:
    rows.extend(parse_lines(text))

  for name, kind, domain in COLUMNS:
    idx = [c[0] for c in COLUMNS].index(name)
    for r in rows:
      if kind == "categorical":
        assert r[idx] in domain, (name, r[idx])
      else:
        assert domain[0] <= int(r[idx]) <= domain[1], (name, r[idx])

  os.makedirs(args.out, exist_ok=True)
  attributes = []
  for name, kind, domain in COLUMNS:
    attributes.append({"name": name, "kind": kind, "domain": list(domain),
                       "role": "plain"})
  schema = {"tables": [{"name": "adult", "primary_private": True,
                        "max_multiplicity": 1, "attributes": attributes}]}
  with open(os.path.join(args.out, "schema.json"), "w") as f:
    json.dump(schema, f, indent=2)
    f.write("\n")
  with open(os.path.join(args.out, "adult.csv"), "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow([c[0] for c in COLUMNS])
    w.writerows(rows)
  print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
  main()
