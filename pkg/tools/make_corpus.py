#!/usr/bin/env python3
"""Generate the bundled example corpus under data/.

Deterministic (fixed seed). The corpus is synthetic but mirrors the layout
and scale of the real-world symptom/disease files this engine targets:

  sym_t.csv      273 rows, one with a null name  -> 272 indexed symptoms
  dia_t.csv      1167 rows, 22 with null names   -> 1145 indexed diseases
  diffsydiw.csv  cluster-structured weights plus dirty rows exercising
                 every cleaning path (nulls, unknown ids, negative weights,
                 stray delimiters, duplicate pairs)
  prec_t.csv     treatment courses for most diseases; a few intentionally
                 missing, plus dirty rows

Structure: most diseases are "windows" over a ring of symptoms (a tapered
band of 6-8 consecutive ring symptoms each). The banded geometry is smooth
and low-rank, so a rank-50 factorization preserves the neighborhood
structure: split-half models agree (sanity protocol) and latent rankings
reproduce raw-weight rankings (regression protocol). Two small hand-built
clusters sit outside the ring and pin the golden queries: {1, 2} ->
Ventral hernia + Diverticulosis, {2, 81} -> Ventral hernia + Vitiligo.
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

import numpy as np

SEED = 97

N_SYMPTOM_ROWS = 273
N_DISEASE_ROWS = 1167
NULL_SYMPTOM_IDS = [205]
NULL_DISEASE_IDS = [29, 88, 143, 201, 260, 311, 377, 422, 480, 529, 585,
                    633, 692, 741, 800, 856, 901, 948, 1002, 1053, 1099, 1150]
ZERO_TRIPLE_DISEASE_IDS = [333, 777, 1111]     # valid but never weighted
NO_REMEDY_EVERY = 25                           # every k-th disease lacks prec_t rows

VENTRAL_HERNIA = 17
DIVERTICULOSIS = 54
VITILIGO = 338

HAND_SYMPTOMS = {
    1: "Upper abdominal pain",
    2: "Lower abdominal pain",
    46: "Abdominal bloating",
    47: "Constipation",
    48: "Nausea",
    81: "Rash",
    82: "Itching",
    83: "Skin discoloration",
    84: "Dry skin",
}

HAND_DISEASES = {
    VENTRAL_HERNIA: "Ventral hernia",
    DIVERTICULOSIS: "Diverticulosis",
    VITILIGO: "Vitiligo",
}

# golden weights: symptoms 1 and 2 stay (almost) exclusive to the two
# abdominal golden diseases so the combined query ranks them first, and
# symptom 81 is dominated by Vitiligo
HAND_TRIPLES = {
    VENTRAL_HERNIA: {1: 55, 2: 60, 46: 18, 48: 10},
    DIVERTICULOSIS: {1: 48, 2: 44, 46: 22, 47: 15},
    VITILIGO: {81: 62, 83: 30, 84: 12},
}

HAND_REMEDIES = {
    VENTRAL_HERNIA: [
        "Eating smaller meals may help prevent bloating and swelling.",
        "Laparoscopic surgery.",
    ],
    DIVERTICULOSIS: [
        "A high-fibre diet with plenty of fluids; mild episodes usually settle without specific treatment.",
    ],
    VITILIGO: [
        "Photodynamic therapy, Medications: Steroid and Immunosuppresive drug.",
    ],
}

STANDALONE_SYMPTOMS = [
    "Fever", "Chills", "Fatigue", "Night sweats", "Unintended weight loss",
    "Loss of appetite", "Headache", "Dizziness", "Fainting", "Blurred vision",
    "Double vision", "Dry eyes", "Watery eyes", "Light sensitivity", "Earache",
    "Ringing in the ears", "Hearing loss", "Nosebleed", "Runny nose",
    "Nasal congestion", "Sneezing", "Sore throat", "Hoarseness",
    "Difficulty swallowing", "Dry cough", "Productive cough", "Coughing up blood",
    "Wheezing", "Shortness of breath", "Rapid breathing", "Chest tightness",
    "Palpitations", "Irregular heartbeat", "Heartburn", "Acid reflux",
    "Vomiting", "Vomiting blood", "Diarrhea", "Bloody stool", "Black stool",
    "Flatulence", "Rectal pain", "Painful urination", "Frequent urination",
    "Blood in urine", "Urinary urgency", "Inability to urinate", "Night urination",
    "Excessive thirst", "Excessive hunger", "Tremor", "Seizures", "Confusion",
    "Memory loss", "Slurred speech", "Loss of balance", "Poor coordination",
    "Mood swings", "Anxiety", "Irritability", "Depressed mood", "Insomnia",
    "Excessive sleepiness", "Snoring", "Jaundice", "Pale skin", "Easy bruising",
    "Slow wound healing", "Hair loss", "Brittle nails", "Cold intolerance",
    "Heat intolerance", "Swollen lymph nodes", "Muscle aches", "Joint pain",
    "Joint stiffness", "Back pain", "Stiff neck", "Leg cramps", "Restless legs",
    "Swollen ankles", "Cold hands and feet", "Numb toes", "Facial swelling",
    "Mouth ulcers", "Bleeding gums", "Bad breath", "Metallic taste",
    "Loss of smell", "Loss of taste", "Hiccups", "Excessive sweating",
    "Low body temperature", "Hot flashes", "Menstrual irregularity",
    "Pelvic pressure", "Groin swelling", "Hives", "Peeling skin",
]

BODY_SITES = [
    "chest", "neck", "shoulder", "elbow", "wrist", "hand", "finger", "hip",
    "knee", "ankle", "foot", "jaw", "scalp", "forearm", "thigh", "calf",
    "heel", "rib", "tailbone", "collarbone", "eye socket", "temple",
]

SENSATIONS = [
    "pain", "stiffness", "swelling", "numbness", "tingling", "weakness",
    "cramping", "burning sensation", "tenderness", "spasms",
]

REAL_DISEASES = [
    "Appendicitis", "Irritable bowel syndrome", "Gastritis", "Peptic ulcer",
    "Gallstones", "Pancreatitis", "Celiac disease", "Crohn disease",
    "Ulcerative colitis", "Lactose intolerance", "Gastroenteritis",
    "Inguinal hernia", "Hiatal hernia", "Eczema", "Psoriasis",
    "Contact dermatitis", "Seborrheic dermatitis", "Rosacea", "Acne vulgaris",
    "Urticaria", "Impetigo", "Cellulitis", "Shingles", "Chickenpox",
    "Measles", "Rubella", "Scarlet fever", "Hand foot and mouth disease",
    "Ringworm", "Athlete's foot", "Scabies", "Head lice", "Influenza",
    "Common cold", "Sinusitis", "Tonsillitis", "Laryngitis", "Bronchitis",
    "Pneumonia", "Asthma", "Emphysema", "Pulmonary embolism", "Tuberculosis",
    "Whooping cough", "Pleurisy", "Sleep apnea", "Hypertension",
    "Coronary artery disease", "Angina", "Myocarditis", "Pericarditis",
    "Atrial fibrillation", "Heart failure", "Deep vein thrombosis",
    "Varicose veins", "Anemia", "Iron deficiency", "Hemophilia", "Leukemia",
    "Lymphoma", "Migraine", "Tension headache", "Cluster headache",
    "Epilepsy", "Parkinson disease", "Multiple sclerosis", "Bell palsy",
    "Trigeminal neuralgia", "Sciatica", "Carpal tunnel syndrome",
    "Meningitis", "Encephalitis", "Stroke", "Transient ischemic attack",
    "Diabetes mellitus", "Hypothyroidism", "Hyperthyroidism", "Gout",
    "Osteoarthritis", "Rheumatoid arthritis", "Osteoporosis", "Fibromyalgia",
    "Bursitis", "Tendinitis", "Plantar fasciitis", "Frozen shoulder",
    "Kidney stones", "Urinary tract infection", "Pyelonephritis",
    "Glomerulonephritis", "Nephrotic syndrome", "Interstitial cystitis",
    "Benign prostatic hyperplasia", "Prostatitis", "Endometriosis",
    "Polycystic ovary syndrome", "Ovarian cyst", "Uterine fibroids",
    "Pelvic inflammatory disease", "Mastitis", "Conjunctivitis", "Stye",
    "Glaucoma", "Cataract", "Macular degeneration", "Uveitis", "Keratitis",
    "Otitis media", "Otitis externa", "Meniere disease", "Labyrinthitis",
    "Mumps", "Hepatitis A", "Hepatitis B", "Cirrhosis", "Fatty liver disease",
    "Mononucleosis", "Lyme disease", "Malaria", "Dengue fever",
    "Typhoid fever", "Cholera", "Food poisoning", "Botulism", "Tetanus",
    "Sepsis", "Hypoglycemia", "Cushing syndrome", "Addison disease",
    "Vitamin D deficiency", "Scurvy", "Rickets", "Obesity",
    "Gastroesophageal reflux disease", "Barrett esophagus", "Esophagitis",
    "Diverticulitis", "Hemorrhoids", "Anal fissure", "Rectal prolapse",
]

DISEASE_PREFIXES = ["Acute", "Chronic", "Recurrent", "Idiopathic", "Secondary"]

ORGANS = [
    "sinus", "middle ear", "larynx", "bronchus", "lung", "pleura",
    "esophagus", "stomach", "duodenum", "colon", "rectum", "liver",
    "gallbladder", "pancreas", "kidney", "bladder", "urethra", "prostate",
    "uterus", "ovary", "thyroid", "adrenal gland", "spleen", "tonsil",
    "cornea", "retina", "optic nerve", "inner ear", "nail bed", "hip joint",
    "knee joint", "shoulder joint", "spine", "sciatic nerve", "facial nerve",
    "aorta", "carotid artery", "coronary artery", "femoral vein",
    "bone marrow", "lymph node", "salivary gland", "tear duct", "diaphragm",
    "peritoneum", "appendix", "small intestine", "vocal cord", "eyelid",
    "achilles tendon",
]

CONDITIONS = [
    "inflammation", "infection", "ulceration", "stenosis", "prolapse",
    "cystic disease", "fibrosis", "abscess", "obstruction", "polyposis",
    "calcification", "erosion", "hypertrophy", "atrophy", "degeneration",
    "dysfunction", "insufficiency", "rupture", "dilation", "spasm",
    "edema", "ischemia",
]

TREATMENT_TEMPLATES = [
    "Rest and increased fluid intake.",
    "A short course of oral antibiotics.",
    "Nonsteroidal anti-inflammatory medication as needed.",
    "Topical corticosteroid cream applied twice daily.",
    "Warm compresses several times a day.",
    "Cold compresses to reduce swelling.",
    "Physical therapy twice a week for six weeks.",
    "A graded exercise and stretching program.",
    "Dietary adjustment with smaller, more frequent meals.",
    "Elimination diet under dietician supervision.",
    "Antihistamines to control the reaction.",
    "Bronchodilator inhaler as required.",
    "A course of antifungal medication.",
    "Antiviral therapy started within 72 hours.",
    "Proton-pump inhibitors for four to eight weeks.",
    "Laxatives and a high-fibre diet.",
    "Oral rehydration therapy.",
    "Elevation of the affected limb and compression stockings.",
    "Splinting and activity modification.",
    "Corticosteroid injection into the affected joint.",
    "Surgical drainage if the collection persists.",
    "Elective surgical repair.",
    "Endoscopic evaluation and dilation.",
    "Lithotripsy to break up the stones.",
    "Beta-blockers to control the heart rate.",
    "Diuretics and salt restriction.",
    "Long-term anticoagulation therapy.",
    "Iron supplementation for three months.",
    "Vitamin replacement therapy.",
    "Thyroid hormone replacement.",
    "Insulin therapy with glucose monitoring.",
    "An urgent specialist referral.",
    "Watchful waiting with review in six weeks.",
    "Counselling and stress management techniques.",
    "A structured sleep hygiene program.",
    "Immunosuppressive therapy under specialist care.",
    "Phototherapy sessions three times weekly.",
    "Radiotherapy planned by the oncology team.",
    "Antispasmodic medication before meals.",
    "Saline nasal irrigation and steam inhalation.",
]


def build_symptom_names(rng: np.random.Generator) -> dict[int, str]:
    pool = list(STANDALONE_SYMPTOMS)
    for site in BODY_SITES:
        for sensation in SENSATIONS:
            pool.append(f"{site.capitalize()} {sensation}")
    seen = set(HAND_SYMPTOMS.values())
    unique = []
    for name in pool:
        if name not in seen:
            seen.add(name)
            unique.append(name)
    needed = N_SYMPTOM_ROWS - len(NULL_SYMPTOM_IDS) - len(HAND_SYMPTOMS)
    if len(unique) < needed:
        raise SystemExit(f"symptom name pool too small: {len(unique)} < {needed}")
    rng.shuffle(unique)
    names = dict(HAND_SYMPTOMS)
    it = iter(unique)
    for syd in range(1, N_SYMPTOM_ROWS + 1):
        if syd in names or syd in NULL_SYMPTOM_IDS:
            continue
        names[syd] = next(it)
    return names


def build_disease_names(rng: np.random.Generator) -> dict[int, str]:
    pool = list(REAL_DISEASES)
    for organ in ORGANS:
        for condition in CONDITIONS:
            pool.append(f"{condition.capitalize()} of the {organ}")
    for prefix in DISEASE_PREFIXES:
        for organ in ORGANS[:20]:
            pool.append(f"{prefix} {organ} disorder")
    seen = set(HAND_DISEASES.values())
    unique = []
    for name in pool:
        if name not in seen:
            seen.add(name)
            unique.append(name)
    needed = N_DISEASE_ROWS - len(NULL_DISEASE_IDS) - len(HAND_DISEASES)
    if len(unique) < needed:
        raise SystemExit(f"disease name pool too small: {len(unique)} < {needed}")
    rng.shuffle(unique)
    names = dict(HAND_DISEASES)
    it = iter(unique)
    for did in range(1, N_DISEASE_ROWS + 1):
        if did in names or did in NULL_DISEASE_IDS:
            continue
        names[did] = next(it)
    return names


# symptoms 1, 2 and 81 never receive weights outside the hand-built
# clusters so their latent directions stay pinned to the golden diseases
PROTECTED_SYMPTOMS = {1, 2, 81}

ABDOMINAL_COMPANION_COUNT = 18     # diseases on {46, 47, 48}
SKIN_COMPANION_COUNT = 18          # diseases on {82, 83, 84}, two touch 81

WINDOW_WIDTH = 34
WINDOW_INTENSITY = 16.0
POSITION_SLOTS = 14      # distinct window starts; clones tie exactly


def ring_symptoms(valid_symptom_ids):
    hand = set(HAND_SYMPTOMS)
    return [s for s in valid_symptom_ids if s not in hand]


def window_triples(ring, position, width=WINDOW_WIDTH, intensity=WINDOW_INTENSITY):
    """Tapered weights over `width` consecutive ring symptoms.

    The profile is identical for every window (half-sine taper, fixed width
    and intensity): the banded matrix is then nearly circulant, its
    spectrum rolls off sharply, and the default factorization rank covers
    both the ring and the hand clusters with room to spare. The taper is
    strictly concave, so the sum of any two taper values at a fixed
    separation peaks at the symmetric placement; raw-weight rankings and
    latent-alignment rankings then favor the same windows.
    """
    triples = {}
    for offset in range(width):
        syd = ring[(position + offset) % len(ring)]
        # concave taper on a half-height pedestal: covering two query
        # symptoms (even at window edges) always outweighs covering one at
        # the peak, and symmetric coverage beats lopsided coverage, so
        # raw-weight and latent-alignment rankings favor the same windows
        taper = 0.55 + 0.45 * float(np.sin(np.pi * (offset + 0.5) / width))
        # one decimal keeps raw sums distinct across window offsets, so the
        # raw-weight ordering ties only between identically placed windows
        triples[syd] = max(0.1, round(intensity * taper, 1))
    return triples


def companion_triples(rng, pool, touch=None):
    """Weights for a hand-cluster companion disease."""
    k = int(rng.integers(2, len(pool) + 1))
    chosen = rng.choice(pool, size=k, replace=False)
    triples = {int(s): int(rng.integers(8, 26)) for s in chosen}
    if touch is not None:
        triples[touch] = int(rng.integers(4, 9))
    return triples


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", help="output directory")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(SEED)
    symptom_names = build_symptom_names(rng)
    disease_names = build_disease_names(rng)

    valid_symptom_ids = sorted(symptom_names)
    valid_disease_ids = sorted(disease_names)
    ring = ring_symptoms(valid_symptom_ids)

    regular = [d for d in valid_disease_ids
               if d not in HAND_TRIPLES and d not in ZERO_TRIPLE_DISEASE_IDS]
    shuffled = list(regular)
    rng.shuffle(shuffled)
    abdominal_companions = shuffled[:ABDOMINAL_COMPANION_COUNT]
    skin_companions = shuffled[ABDOMINAL_COMPANION_COUNT:
                               ABDOMINAL_COMPANION_COUNT + SKIN_COMPANION_COUNT]
    ring_diseases = shuffled[ABDOMINAL_COMPANION_COUNT + SKIN_COMPANION_COUNT:]

    triples: dict[tuple[int, int], float] = {}
    for did, weights in HAND_TRIPLES.items():
        for syd, wei in weights.items():
            triples[(syd, did)] = float(wei)
    for did in abdominal_companions:
        for syd, wei in companion_triples(rng, [46, 47, 48]).items():
            triples[(syd, did)] = float(wei)
    for i, did in enumerate(skin_companions):
        touch = 81 if i < 2 else None
        for syd, wei in companion_triples(rng, [82, 83, 84], touch=touch).items():
            triples[(syd, did)] = float(wei)
    # evenly spaced window starts, quantized to POSITION_SLOTS distinct
    # offsets: the banded matrix then has low rank (one pattern per slot),
    # the default factorization covers it exactly, and slot-mates tie
    # exactly in both raw-weight and latent rankings
    import os
    slots = int(os.environ.get("CORPUS_SLOTS", POSITION_SLOTS))
    width = int(os.environ.get("CORPUS_WIDTH", WINDOW_WIDTH))
    for i, did in enumerate(ring_diseases):
        slot = i % slots
        position = int(slot * len(ring) / slots) % len(ring)
        for syd, wei in window_triples(ring, position, width=width).items():
            triples[(syd, did)] = float(wei)

    # --- sym_t.csv ---------------------------------------------------------
    sym_rows = []
    for syd in range(1, N_SYMPTOM_ROWS + 1):
        sym_rows.append((syd, "" if syd in NULL_SYMPTOM_IDS else symptom_names[syd]))

    # --- dia_t.csv ---------------------------------------------------------
    dia_rows = []
    for did in range(1, N_DISEASE_ROWS + 1):
        dia_rows.append((did, "" if did in NULL_DISEASE_IDS else disease_names[did]))

    # --- diffsydiw.csv -----------------------------------------------------
    weight_rows = []
    for (syd, did), wei in sorted(triples.items()):
        text = str(int(wei)) if float(wei) == int(wei) else f"{wei:.1f}"
        weight_rows.append((syd, did, text))

    dirty_weight_lines = [
        "12,77,",                 # null weight
        "13,78,",                 # null weight
        ",86,4",                  # null syd
        "14,,6",                  # null did
        "500,44,3",               # unknown symptom id
        "501,45,2",               # unknown symptom id
        "502,46,9",               # unknown symptom id
        "15,5000,4",              # unknown disease id
        "16,5001,7",              # unknown disease id
        f"21,{NULL_DISEASE_IDS[19]},5",   # references a null-name disease
        f"22,{NULL_DISEASE_IDS[19]},3",   # references a null-name disease
        "17,91,-4",               # negative weight
        "18,92,-1",               # negative weight
        "19,93,oops",             # unparseable weight
    ]
    # duplicate pairs: pick four existing triples and append a second row
    dup_candidates = [(syd, did) for (syd, did) in sorted(triples)
                      if syd not in (1, 2, 81)][200::631][:4]
    for syd, did in dup_candidates:
        dirty_weight_lines.append(f"{syd},{did},2")
    # stray delimiters on valid content (normalized by the loader)
    stray = []
    stray_candidates = [(syd, did) for (syd, did) in sorted(triples) if syd > 90][100::977][:6]
    for i, (syd, did) in enumerate(stray_candidates):
        sep = [";", "\t", "|"][i % 3]
        stray.append(f"{syd}{sep}{did}{sep}1")
    dirty_weight_lines.extend(stray)

    # --- prec_t.csv --------------------------------------------------------
    remedy_rows = []
    for did in valid_disease_ids:
        if did in HAND_REMEDIES:
            for treatment in HAND_REMEDIES[did]:
                remedy_rows.append((did, disease_names[did], treatment))
            continue
        if did % NO_REMEDY_EVERY == 0:
            continue
        count = int(rng.integers(1, 4))
        picks = rng.choice(len(TREATMENT_TEMPLATES), size=count, replace=False)
        for p in picks:
            remedy_rows.append((did, disease_names[did], TREATMENT_TEMPLATES[int(p)]))
    dirty_remedy_lines = [
        "5000,Ghost disease,Rest.",          # unknown disease id
        "5001,Another ghost,Fluids.",        # unknown disease id
        "61,,",                              # null name and treatment
    ]

    def write(path, header, rows, extra_lines=()):
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
            for line in extra_lines:
                handle.write(line + "\n")

    write(out / "sym_t.csv", ("syd", "symptom"), sym_rows)
    write(out / "dia_t.csv", ("did", "diagnose"), dia_rows)
    write(out / "diffsydiw.csv", ("syd", "did", "wei"), weight_rows, dirty_weight_lines)
    write(out / "prec_t.csv", ("did", "diagnose", "pid"), remedy_rows, dirty_remedy_lines)

    print(f"sym_t.csv:      {len(sym_rows)} rows ({len(NULL_SYMPTOM_IDS)} null)")
    print(f"dia_t.csv:      {len(dia_rows)} rows ({len(NULL_DISEASE_IDS)} null)")
    print(f"diffsydiw.csv:  {len(weight_rows)} clean + {len(dirty_weight_lines)} dirty rows")
    print(f"prec_t.csv:     {len(remedy_rows)} clean + {len(dirty_remedy_lines)} dirty rows")


if __name__ == "__main__":
    main()
