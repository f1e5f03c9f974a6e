/**
 * Rubric definition: the scoring categories, their band descriptions,
 * and which categories a rater may skip. Loaded from rubric.json and
 * validated against the category set the evaluation suite accepts, so
 * an exported CSV never contains a category the ingest step rejects.
 */

export interface RubricBand {
  points: string
  text: string
}

export interface RubricCategory {
  key: string
  title: string
  bands: RubricBand[]
}

export interface RubricDefinition {
  categories: RubricCategory[]
  scale: { min: number; max: number }
  skippable: string[]
}

/** Category keys the evaluation suite's ratings ingest accepts, in report order. */
export const ACCEPTED_CATEGORIES = [
  'coherence',
  'consistency',
  'fluency',
  'relevance',
  'clinical_use',
] as const

export const SCALE_MIN = 0
export const SCALE_MAX = 5

function isRecord(v: unknown): v is Record<string, unknown> {
  return typeof v === 'object' && v !== null && !Array.isArray(v)
}

/**
 * Validates a parsed rubric.json. Throws with every problem found, not
 * just the first, so a hand-edited file fails loudly once.
 */
export function validateRubric(raw: unknown): RubricDefinition {
  const problems: string[] = []
  if (!isRecord(raw)) {
    throw new Error('rubric must be a JSON object')
  }

  const categories: RubricCategory[] = []
  if (!Array.isArray(raw.categories)) {
    problems.push('categories must be an array')
  } else {
    for (const entry of raw.categories) {
      if (!isRecord(entry) || typeof entry.key !== 'string' || typeof entry.title !== 'string') {
        problems.push(`category entry is missing key/title: ${JSON.stringify(entry)}`)
        continue
      }
      if (!Array.isArray(entry.bands) || entry.bands.length === 0) {
        problems.push(`category ${entry.key} has no band descriptions`)
        continue
      }
      const bands: RubricBand[] = []
      for (const band of entry.bands) {
        if (!isRecord(band) || typeof band.points !== 'string' || typeof band.text !== 'string') {
          problems.push(`category ${entry.key} has a malformed band`)
        } else {
          bands.push({ points: band.points, text: band.text })
        }
      }
      categories.push({ key: entry.key, title: entry.title, bands })
    }
  }

  const keys = categories.map((c) => c.key)
  const accepted = new Set<string>(ACCEPTED_CATEGORIES)
  for (const key of keys) {
    if (!accepted.has(key)) problems.push(`unknown category key ${key}`)
  }
  for (const key of accepted) {
    if (!keys.includes(key)) problems.push(`missing category key ${key}`)
  }
  if (new Set(keys).size !== keys.length) problems.push('duplicate category keys')

  let scale = { min: SCALE_MIN, max: SCALE_MAX }
  if (isRecord(raw.scale) && typeof raw.scale.min === 'number' && typeof raw.scale.max === 'number') {
    scale = { min: raw.scale.min, max: raw.scale.max }
    if (scale.min !== SCALE_MIN || scale.max !== SCALE_MAX) {
      problems.push(`scale must be ${SCALE_MIN}..${SCALE_MAX}, got ${scale.min}..${scale.max}`)
    }
  } else {
    problems.push('scale must be an object with numeric min and max')
  }

  let skippable: string[] = []
  if (Array.isArray(raw.skippable) && raw.skippable.every((s) => typeof s === 'string')) {
    skippable = raw.skippable as string[]
    for (const key of skippable) {
      if (!keys.includes(key)) problems.push(`skippable lists unknown category ${key}`)
    }
  } else {
    problems.push('skippable must be an array of category keys')
  }

  if (problems.length > 0) {
    throw new Error(`invalid rubric: ${problems.join('; ')}`)
  }
  return { categories, scale, skippable }
}
