#!/usr/bin/env python3
"""Write deterministic sample embeddings for a profile corpus.

Each skill and domain gets a vector near the centre of its topic group, so
profiles that share a topic land close together even when they share no
exact skill names. This is a stand-in for a trained sentence encoder, used
only so the demo corpus exercises the file-import path.

    make_sample_embeddings.py profiles.jsonl embeddings.jsonl --dim 128 --seed 42
"""

import argparse
import hashlib
import json

import numpy as np

GROUPS = {
    "systems": ["C", "C++", "Rust", "Go", "Linux", "Bash", "Embedded Systems", "Arduino", "Raspberry Pi",
                "Verilog", "Signal Processing", "Internet of Things"],
    "web": ["JavaScript", "TypeScript", "HTML", "CSS", "React", "Node.js", "Django", "Flask", "Spring Boot",
            "Java", "Kotlin", "Swift", "UI/UX Design", "Figma", "Web Development", "Human Computer Interaction"],
    "ml": ["Python", "R", "MATLAB", "Machine Learning", "Deep Learning", "TensorFlow", "PyTorch", "Scikit-learn",
           "Pandas", "NumPy", "Statistics", "Data Visualization", "Natural Language Processing", "Computer Vision",
           "Reinforcement Learning", "Data Mining", "Artificial Intelligence", "Data Science"],
    "data": ["SQL", "Big Data", "Apache Spark", "Hadoop", "MongoDB", "PostgreSQL"],
    "cloud": ["Git", "Docker", "Kubernetes", "AWS", "Azure", "Terraform", "CI/CD", "Cloud Computing", "Agile",
              "Software Testing", "Software Engineering"],
    "security": ["Networking", "Penetration Testing", "Cryptography", "Network Security", "Ethical Hacking",
                 "Wireshark", "Digital Forensics", "Blockchain", "Solidity", "Cybersecurity", "Computer Networks"],
    "interactive": ["Robotics", "ROS", "Unity", "Game Development"],
}


def term_seed(seed, term):
    digest = hashlib.sha256(f"{seed}:{term.lower()}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def build_term_vectors(dim, seed):
    rng = np.random.default_rng(seed)
    centres = {g: rng.standard_normal(dim) for g in sorted(GROUPS)}
    vectors = {}
    for group, terms in GROUPS.items():
        for term in terms:
            own = np.random.default_rng(term_seed(seed, term)).standard_normal(dim)
            vectors[term.lower()] = centres[group] + 0.6 * own
    return vectors


def term_vector(term, vectors, dim, seed):
    key = term.strip().lower()
    if key not in vectors:
        vectors[key] = np.random.default_rng(term_seed(seed, key)).standard_normal(dim)
    return vectors[key]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("profiles")
    parser.add_argument("output")
    parser.add_argument("--dim", type=int, default=128)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    vectors = build_term_vectors(args.dim, args.seed)
    with open(args.profiles, encoding="utf-8") as f:
        profiles = [json.loads(line) for line in f if line.strip()]

    with open(args.output, "w", encoding="utf-8") as out:
        for p in profiles:
            skills = [s for s in p["skillset"].split(",") if s.strip()]
            v = term_vector(p["domain"], vectors, args.dim, args.seed).copy()
            v += np.mean([term_vector(s, vectors, args.dim, args.seed) for s in skills], axis=0)
            noise = np.random.default_rng(term_seed(args.seed, "profile:" + p["id"])).standard_normal(args.dim)
            v += 0.1 * noise
            v /= np.linalg.norm(v)
            out.write(json.dumps({"id": p["id"], "vector": [round(float(x), 8) for x in v]}) + "\n")


if __name__ == "__main__":
    main()
