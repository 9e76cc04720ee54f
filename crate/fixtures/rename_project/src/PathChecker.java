package run.halo.app.utils;

public class PathChecker {

    private String rootPath;

    public PathChecker(String rootPath) {
        this.rootPath = rootPath;
    }

    public boolean contains(String candidatePath) {
        String prefix = rootPath.concat("/");
        return candidatePath.startsWith(prefix);
    }
}
