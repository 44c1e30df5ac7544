#ifndef DIHEDRAL_DIHEDRAL_H
#define DIHEDRAL_DIHEDRAL_H

#if defined(_WIN32)
#define DIH_API __declspec(dllexport)
#else
#define DIH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* The first three codes double as process exit codes. */
typedef enum {
  DIH_OK = 0,
  DIH_VIOLATIONS = 1,   /* a verification or verdict failed */
  DIH_INPUT_ERROR = 2,  /* unreadable input, window or truncation error */
  DIH_BAD_ARGUMENT = 3, /* misuse of this API */
  DIH_INTERNAL = 4
} dih_status;

/* One batch job: verify, homology, induced-map, invariance-check or expand. */
typedef struct dih_job dih_job;

DIH_API dih_status dih_job_new(const char* command, dih_job** out);
DIH_API void dih_job_free(dih_job* job);

/* Documents are read in the order given. */
DIH_API dih_status dih_job_add_file(dih_job* job, const char* path);
DIH_API dih_status dih_job_add_document(dih_job* job, const char* label, const char* json_text);

/*
 * Keys: ring (z, q, zp:<p>), truncate, degrees (lo..hi), kind (cyclic,
 * dihedral), format (text, json), oracle (0, 1), subject, f, g, h_gf, h_fg,
 * and for expand: expansion (face, morphism, composition, homotopy), tuple.
 */
DIH_API dih_status dih_job_set(dih_job* job, const char* key, const char* value);

/* Runs the job; the report is available from dih_job_output afterwards. */
DIH_API dih_status dih_job_run(dih_job* job);
DIH_API const char* dih_job_output(const dih_job* job);

/* Message for the last DIH_BAD_ARGUMENT or DIH_INTERNAL on this thread. */
DIH_API const char* dih_last_error(void);
DIH_API const char* dih_status_name(dih_status s);
DIH_API const char* dih_version(void);

#ifdef __cplusplus
}
#endif

#endif
