import java.util.ArrayList;
import java.util.List;

public class Util {

    public static <T> List<T> copyList(List<T> source) {
        return new ArrayList<>(source);
    }

    public static <T> void addElementToList(List<T> list, T element) {
        list.add(element);
    }

    public static String toString(List<String> list) {
        if (list == null) { return ""; }
        StringBuilder builder = new StringBuilder();
        for (String s : list) {
            builder.append(s);
        }
        return builder.toString();
    }
}
